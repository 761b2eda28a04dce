//! Order thresholds for a fixed base and prime set.
//!
//! For each `p` in `S` the profile stores `n_p`, the stabilization threshold
//! `N_p`, and `ord(b, p^{n_p})`. Past `N_p` every extra power of `p` in a
//! denominator multiplies the order of `b` by exactly `p`, which gives the
//! closed form in [`OrderProfile::order_via_formula`] and the `d0 / d1`
//! split used by the orbit decomposition.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{
    big_to_u64, group_exponent, is_prime, mult_order_bruteforce, mult_order_fast, vp,
    vp_of_power_minus_one, Factorization,
};

/// Per-prime data of an [`OrderProfile`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeRecord {
    pub n: u32,
    #[serde(rename = "N")]
    pub big_n: u32,
    /// `ord(b, p^n)`
    pub ord: u64,
}

/// Immutable per-(b, S) table; cheap to share across threads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderProfile {
    base: u64,
    primes: Vec<u64>,
    #[serde(rename = "per_prime")]
    records: BTreeMap<u64, PrimeRecord>,
}

/// `d = d0 * d1` with `d0` the part of `d` above the thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DenominatorSplit {
    pub d: u64,
    pub d0: u64,
    pub d1: u64,
}

fn check_pair(b: u64, p: u64) -> Result<()> {
    if b < 2 {
        return Err(Error::InvalidBase(b));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if b % p == 0 {
        return Err(Error::PrimeDividesBase { prime: p, base: b });
    }
    Ok(())
}

/// `n_p`: `max{3, v2(b-1), v2(b+1) + 1}` for `p = 2`, else
/// `max{1, v_p(b^(p-1) - 1)}`.
///
/// For `b = 7 mod 8` the lifting `ord(b, 2^e) = 2^(e-n) ord(b, 2^n)` only
/// starts at `n = v2(b^2 - 1) = v2(b+1) + 1`; [`stated_np`] omits the `+ 1`
/// and gets `ord(7, 16)` wrong.
pub fn compute_np(b: u64, p: u64) -> Result<u32> {
    check_pair(b, p)?;
    if p == 2 {
        Ok(3.max(vp(b - 1, 2)?).max(vp(b + 1, 2)? + 1))
    } else {
        Ok(1.max(vp_of_power_minus_one(b, p - 1, p)?))
    }
}

/// The threshold as usually stated, `max{3, v2(b-1), v2(b+1)}` for `p = 2`.
/// Differs from [`compute_np`] exactly when `b = 7 mod 8`.
pub fn stated_np(b: u64, p: u64) -> Result<u32> {
    check_pair(b, p)?;
    if p == 2 {
        Ok(3.max(vp(b - 1, 2)?).max(vp(b + 1, 2)?))
    } else {
        compute_np(b, p)
    }
}

/// `N_p = max over q in S of n_p - v_p(ord(b, p^{n_p})) + v_p(ord(b, q^{n_q}))`.
///
/// `partial` maps every `q` in `S` to `(n_q, ord(b, q^{n_q}))` and must contain `p`.
pub fn compute_big_n(p: u64, partial: &BTreeMap<u64, (u32, u64)>) -> Result<u32> {
    let &(n_p, ord_p) = partial.get(&p).ok_or(Error::PrimeOutsideSet { prime: p })?;
    let base = n_p - vp(ord_p, p)?;
    let mut best = 0;
    for &(_, ord_q) in partial.values() {
        best = best.max(base + vp(ord_q, p)?);
    }
    Ok(best)
}

impl OrderProfile {
    /// Builds the profile for base `b` and prime set `S`. Duplicates in `S`
    /// are ignored.
    pub fn new<I: IntoIterator<Item = u64>>(b: u64, primes: I) -> Result<Self> {
        if b < 2 {
            return Err(Error::InvalidBase(b));
        }
        let set: BTreeSet<u64> = primes.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyPrimeSet);
        }
        let mut partial = BTreeMap::new();
        for &p in &set {
            let n = compute_np(b, p)?;
            let modulus = p.checked_pow(n).ok_or(Error::Overflow("p^n_p"))?;
            partial.insert(p, (n, mult_order_bruteforce(b, modulus)?));
        }
        let mut records = BTreeMap::new();
        for (&p, &(n, ord)) in &partial {
            let big_n = compute_big_n(p, &partial)?;
            records.insert(p, PrimeRecord { n, big_n, ord });
        }
        Ok(OrderProfile { base: b, primes: set.into_iter().collect(), records })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn record(&self, p: u64) -> Option<&PrimeRecord> {
        self.records.get(&p)
    }

    pub fn records(&self) -> impl Iterator<Item = (u64, &PrimeRecord)> {
        self.records.iter().map(|(&p, r)| (p, r))
    }

    pub fn contains(&self, p: u64) -> bool {
        self.records.contains_key(&p)
    }

    /// `prod_{p in S} p^{N_p}`
    pub fn threshold_product(&self) -> BigUint {
        self.records
            .iter()
            .map(|(&p, r)| BigUint::from(p).pow(r.big_n))
            .product()
    }

    fn check_support<'a, I: IntoIterator<Item = &'a u64>>(&self, primes: I) -> Result<()> {
        for &p in primes {
            if !self.contains(p) {
                return Err(Error::PrimeOutsideSet { prime: p });
            }
        }
        Ok(())
    }

    /// `ord(b, d)` for `d = prod p^{e_p}` via the threshold formula.
    /// Zero exponents are allowed; primes outside `S` are rejected.
    pub fn order_via_formula(&self, exponents: &BTreeMap<u64, u32>) -> Result<BigUint> {
        self.check_support(exponents.keys())?;
        let mut d0 = BigUint::one();
        let mut d1_pairs = Vec::with_capacity(exponents.len());
        for (&p, &e) in exponents {
            let big_n = self.records[&p].big_n;
            if e > big_n {
                d0 *= BigUint::from(p).pow(e - big_n);
            }
            d1_pairs.push((p, e.min(big_n)));
        }
        let d1 = Factorization::from_pairs(d1_pairs)?;
        Ok(d0 * BigUint::from(self.bounded_order(&d1)?))
    }

    /// `ord(b, d)` for a denominator supported on `S`.
    pub fn order_of(&self, d: &Factorization) -> Result<u64> {
        let exps: BTreeMap<u64, u32> = d.factors().iter().copied().collect();
        big_to_u64(&self.order_via_formula(&exps)?, "order")
    }

    fn bounded_order(&self, d1: &Factorization) -> Result<u64> {
        let exponent = group_exponent(d1)?;
        mult_order_fast(self.base, d1.value(), &exponent)
    }

    pub fn split_denominator(&self, d: &Factorization) -> Result<DenominatorSplit> {
        self.check_support(d.factors().iter().map(|(p, _)| p))?;
        let (mut d0, mut d1) = (1u64, 1u64);
        for &(p, e) in d.factors() {
            let big_n = self.records[&p].big_n;
            if e > big_n {
                d0 *= p.pow(e - big_n);
            }
            d1 *= p.pow(e.min(big_n));
        }
        debug_assert_eq!(d0 * d1, d.value());
        Ok(DenominatorSplit { d: d.value(), d0, d1 })
    }

    /// Canonical JSON object: `base`, `primes`, `per_prime`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("profile serializes")
    }
}
