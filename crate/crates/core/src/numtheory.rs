//! Integer primitives: factorization, valuations, modular powers and
//! multiplicative orders.
//!
//! Inputs are `u64`; every product is formed in `u128` so nothing can wrap.
//! Quantities that may outgrow a machine word (orders of huge moduli, the
//! density bound) live in `num_bigint` types in the modules that need them.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

/// First thirteen primes; as Miller–Rabin witnesses they are deterministic
/// for every n < 3.3 * 10^24, far beyond `u64`.
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(TRIAL_LIMIT))
}

/// Primes up to and including `limit`.
pub fn sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `b^e mod m`, with `b^0 = 1 mod m`.
pub fn mod_pow(b: u64, mut e: u64, m: u64) -> u64 {
    assert!(m >= 1, "modulus must be positive");
    if m == 1 {
        return 0;
    }
    let mut base = b % m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. `n` must be an odd composite with no prime
/// factor below the trial-division limit. Deterministic: the polynomial
/// constant is walked 1, 2, 3, ...
fn pollard_brent(n: u64) -> u64 {
    const BATCH: u64 = 128;
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // The batch overshot; redo it one step at a time.
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

/// Prime factorization of a positive integer, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization from prime/exponent pairs in any order, merging
    /// repeated primes. Fails if a listed base is not prime or the product
    /// does not fit in `u64`.
    pub fn from_pairs<I: IntoIterator<Item = (u64, u32)>>(pairs: I) -> Result<Self> {
        let mut map = std::collections::BTreeMap::new();
        for (p, e) in pairs {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if e > 0 {
                *map.entry(p).or_insert(0u32) += e;
            }
        }
        let mut value = 1u64;
        for (&p, &e) in &map {
            let pe = checked_pow(p, e).ok_or(Error::Overflow("factorization value"))?;
            value = value.checked_mul(pe).ok_or(Error::Overflow("factorization value"))?;
        }
        Ok(Factorization { value, factors: map.into_iter().collect() })
    }

    pub fn one() -> Self {
        Factorization { value: 1, factors: Vec::new() }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Exponent of `p` (0 when absent).
    pub fn exponent(&self, p: u64) -> u32 {
        self.factors
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.factors.last().map(|&(p, _)| p)
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

fn checked_pow(p: u64, e: u32) -> Option<u64> {
    p.checked_pow(e)
}

/// Factors `n >= 1`: trial division by primes up to 10^6, then Miller–Rabin
/// and Pollard rho on whatever survives.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::OutOfDomain("cannot factor 0".into()));
    }
    let mut rest = n;
    let mut found: Vec<(u64, u32)> = Vec::new();
    for &p in small_primes() {
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            found.push((p, e));
        }
    }
    if rest > 1 {
        let mut stack = vec![rest];
        let mut large = Vec::new();
        while let Some(m) = stack.pop() {
            if m < TRIAL_LIMIT * TRIAL_LIMIT || is_prime(m) {
                large.push(m);
            } else {
                let f = pollard_brent(m);
                stack.push(f);
                stack.push(m / f);
            }
        }
        large.sort_unstable();
        for p in large {
            match found.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => found.push((p, 1)),
            }
        }
    }
    Ok(Factorization { value: n, factors: found })
}

/// `v_p(n)` for nonzero `n`.
pub fn vp(n: u64, p: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::ZeroValuation);
    }
    if p < 2 {
        return Err(Error::NotPrime(p));
    }
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Ok(v)
}

/// The p-adic valuation of a nonzero rational, which may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Valuation {
    pub prime: u64,
    pub value: i64,
}

impl Valuation {
    pub fn of_rational(x: &BigRational, p: u64) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::ZeroValuation);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let v = |n: &BigInt| -> i64 {
            let p = BigInt::from(p);
            let mut n = n.abs();
            let mut v = 0;
            loop {
                let (q, r) = n.div_rem(&p);
                if !r.is_zero() {
                    return v;
                }
                n = q;
                v += 1;
            }
        };
        Ok(Valuation { prime: p, value: v(x.numer()) - v(x.denom()) })
    }
}

pub fn radical(n: u64) -> Result<u64> {
    Ok(factorize(n)?.radical())
}

/// Largest prime divisor `P(n)`, defined for `n >= 2`.
pub fn largest_prime(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::NoPrimeDivisor(n));
    }
    Ok(factorize(n)?.largest_prime().expect("n >= 2 has a prime factor"))
}

/// Smallest `k >= 1` with `b^k = 1 (mod m)`, by walking the powers.
pub fn mult_order_bruteforce(b: u64, m: u64) -> Result<u64> {
    if m == 0 || b.gcd(&m) != 1 {
        return Err(Error::NotCoprime { base: b, modulus: m });
    }
    if m == 1 {
        return Ok(1);
    }
    let step = b % m;
    let mut x = step;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, step, m);
        k += 1;
    }
    Ok(k)
}

/// Multiplicative order by descent through the divisors of a known exponent.
/// `exponent` must factor a multiple of `ord(b, m)`; this is checked.
pub fn mult_order_fast(b: u64, m: u64, exponent: &Factorization) -> Result<u64> {
    if m == 0 || b.gcd(&m) != 1 {
        return Err(Error::NotCoprime { base: b, modulus: m });
    }
    if m == 1 {
        return Ok(1);
    }
    if mod_pow(b, exponent.value(), m) != 1 {
        return Err(Error::NotAnExponent { base: b, modulus: m });
    }
    let mut order = exponent.value();
    for &(q, e) in exponent.factors() {
        for _ in 0..e {
            if mod_pow(b, order / q, m) == 1 {
                order /= q;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

/// Exponent of `(Z/p^n Z)^x`: cyclic of order `(p-1)p^(n-1)` for odd `p`;
/// for `p = 2` it is 1, 2, then `2^(n-2)` once `n >= 3`.
pub fn unit_group_exponent(p: u64, n: u32) -> Result<u64> {
    if n == 0 {
        return Ok(1);
    }
    if p == 2 {
        return Ok(match n {
            1 => 1,
            2 => 2,
            _ => checked_pow(2, n - 2).ok_or(Error::Overflow("unit group exponent"))?,
        });
    }
    checked_pow(p, n - 1)
        .and_then(|pk| pk.checked_mul(p - 1))
        .ok_or(Error::Overflow("unit group exponent"))
}

/// Factored exponent of `(Z/mZ)^x`: the lcm of the prime-power exponents.
pub fn group_exponent(m: &Factorization) -> Result<Factorization> {
    let mut pairs: std::collections::BTreeMap<u64, u32> = std::collections::BTreeMap::new();
    let mut bump = |p: u64, e: u32| {
        let slot = pairs.entry(p).or_insert(0);
        *slot = (*slot).max(e);
    };
    for &(p, n) in m.factors() {
        if p == 2 {
            match n {
                1 => {}
                2 => bump(2, 1),
                _ => bump(2, n - 2),
            }
        } else {
            if n > 1 {
                bump(p, n - 1);
            }
            for &(q, e) in factorize(p - 1)?.factors() {
                bump(q, e);
            }
        }
    }
    Factorization::from_pairs(pairs)
}

/// `ord(b, m)` using the Carmichael exponent of `m` as the descent start.
pub fn mult_order(b: u64, m: u64) -> Result<u64> {
    if m == 0 || b.gcd(&m) != 1 {
        return Err(Error::NotCoprime { base: b, modulus: m });
    }
    let exponent = group_exponent(&factorize(m)?)?;
    mult_order_fast(b, m, &exponent)
}

/// Order of `g^t` when `g` has order `s`.
pub fn order_of_power(s: u64, t: u64) -> u64 {
    assert!(s >= 1 && t >= 1, "order_of_power needs s, t >= 1");
    s / s.gcd(&t)
}

/// `v_p(b^k - 1)` for `b` coprime to `p`, computed modulo growing powers of
/// `p` so that `b^k` itself is never formed.
pub fn vp_of_power_minus_one(b: u64, k: u64, p: u64) -> Result<u32> {
    if b % p == 0 {
        return Err(Error::PrimeDividesBase { prime: p, base: b });
    }
    let bb = BigUint::from(b);
    let pp = BigUint::from(p);
    let kk = BigUint::from(k);
    let mut modulus = pp.clone();
    let mut v = 0;
    while bb.modpow(&kk, &modulus).is_one() {
        v += 1;
        modulus *= &pp;
    }
    Ok(v)
}

/// Converts a `BigUint` known to be small.
pub(crate) fn big_to_u64(x: &BigUint, what: &'static str) -> Result<u64> {
    x.to_u64().ok_or(Error::Overflow(what))
}
