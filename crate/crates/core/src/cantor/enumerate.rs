//! Enumeration and counting of rationals in `C(b, D)` by denominator.
//!
//! For a fixed denominator `d` the candidates `a` are found by descending the
//! tree of level-`k` hull intervals `[V + min C, V + max C] / b^k` and pruning
//! every node whose interval holds no `a/d`. Once a node holds at most
//! [`LEAF`] candidates each one is decided exactly from its residue walk.
//! When `gcd(d, b) = 1` the first `k` digits of a leaf candidate are already
//! known to be allowed, so the walk starts at `r_k = a b^k - V d`, and cycles
//! that pass are cached so the rest of their coset is accepted in O(1).

use std::collections::HashSet;

use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::DigitSet;
use crate::error::{Error, Result};
use crate::fraction::{as_string, positive_epsilon, ReducedFraction};
use crate::numtheory::factorize;
use crate::orbit::{density_bound, floor_bound};
use crate::orders::OrderProfile;

const LEAF: u64 = 4;
const BLOCK: u64 = 1024;

/// Unsigned word used by the scanner: `u64` when `d^2 b^2` fits, else `u128`.
trait Word:
    Copy
    + Ord
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::Rem<Output = Self>
{
    fn of(x: u64) -> Self;
    fn low(self) -> u64;
}

impl Word for u64 {
    #[inline]
    fn of(x: u64) -> Self {
        x
    }
    #[inline]
    fn low(self) -> u64 {
        self
    }
}

impl Word for u128 {
    #[inline]
    fn of(x: u64) -> Self {
        x as u128
    }
    #[inline]
    fn low(self) -> u64 {
        self as u64
    }
}

/// Per-thread scanning state for one digit set.
pub(crate) struct Scanner<'a> {
    ds: &'a DigitSet,
    allowed: &'a [bool],
    b: u64,
    mn: u64,
    mx: u64,
    cache: HashSet<u64>,
}

impl<'a> Scanner<'a> {
    pub(crate) fn new(ds: &'a DigitSet) -> Self {
        Scanner {
            ds,
            allowed: ds.allowed(),
            b: ds.base(),
            mn: ds.min_digit(),
            mx: ds.max_digit(),
            cache: HashSet::new(),
        }
    }

    /// Sorted numerators `a` with `gcd(a, d) = 1` and `a/d` in `C`.
    pub(crate) fn reduced_members(&mut self, d: u64) -> Vec<u64> {
        let mut out = Vec::new();
        if d == 1 {
            if self.allowed[0] {
                out.push(0);
            }
            if self.allowed[self.b as usize - 1] {
                out.push(1);
            }
            return out;
        }
        let tail = crate::orbit::coprime_part(d, self.b);
        if tail > 1 && !self.may_have_members(tail) {
            return out;
        }
        self.cache.clear();
        let coprime = tail == d;
        let mut last = 0u64;
        if (d as u128 * self.b as u128) < (1 << 32) {
            self.visit::<u64>(d, coprime, 1, 0, &mut last, &mut out);
        } else {
            self.visit::<u128>(d, coprime, 1, 0, &mut last, &mut out);
        }
        out
    }

    /// Upper bound on `#{a : a/d in C_k}` minimised over the level `k`:
    /// `|D|^k` hull intervals, each holding at most `floor(len) + 1` of them.
    fn candidate_bound(&self, d: u64) -> u128 {
        let b = self.b as u128;
        let m = self.ds.digits().len() as u128;
        let width = d as u128 * (self.mx - self.mn) as u128;
        let (mut nodes, mut bk, mut best) = (1u128, 1u128, u128::MAX);
        loop {
            let len = width / ((b - 1) * bk);
            best = best.min(nodes.saturating_mul(len + 1));
            if len == 0 || nodes >= best {
                return best;
            }
            nodes = nodes.saturating_mul(m);
            bk = bk.saturating_mul(b);
        }
    }

    /// A member with denominator `d` coprime to `b` drags its whole cycle of
    /// `ord(b, d)` distinct fractions into `C`, so none exist once the order
    /// exceeds the number of candidates.
    fn may_have_members(&self, d: u64) -> bool {
        match crate::numtheory::mult_order(self.b, d) {
            Ok(order) => order as u128 <= self.candidate_bound(d),
            Err(_) => true,
        }
    }

    fn visit<W: Word>(&mut self, d: u64, coprime: bool, bk: W, v: W, last: &mut u64, out: &mut Vec<u64>) {
        let b1 = W::of(self.b - 1);
        let q = b1 * bk;
        let base = v * b1;
        let dd = W::of(d);
        let lo = ((dd * (base + W::of(self.mn)) + q - W::of(1)) / q).low().max(*last + 1);
        let hi = ((dd * (base + W::of(self.mx))) / q).low().min(d - 1);
        if lo > hi {
            return;
        }
        if hi - lo < LEAF {
            for a in lo..=hi {
                if coprime {
                    let r = (W::of(a) * bk - v * dd).low();
                    if self.coprime_cycle_ok::<W>(r, d) && a.gcd(&d) == 1 {
                        out.push(a);
                    }
                } else if a.gcd(&d) == 1 && residue_member(self.allowed, self.b, a, d) {
                    out.push(a);
                }
            }
            *last = hi;
            return;
        }
        let bw = W::of(self.b);
        for &c in self.ds.digits() {
            self.visit(d, coprime, bk * bw, v * bw + W::of(c), last, out);
        }
    }

    /// Whether the purely periodic cycle through residue `r` (mod `d`) uses
    /// only allowed digits.
    fn coprime_cycle_ok<W: Word>(&mut self, r: u64, d: u64) -> bool {
        if !self.cache.is_empty() && self.cache.contains(&r) {
            return true;
        }
        if !cycle_ok::<W>(self.allowed, self.b, r, d) {
            return false;
        }
        let (b, dd) = (W::of(self.b), W::of(d));
        let mut s = r;
        loop {
            self.cache.insert(s);
            s = (b * W::of(s) % dd).low();
            if s == r {
                return true;
            }
        }
    }
}

fn cycle_ok<W: Word>(allowed: &[bool], b: u64, r: u64, d: u64) -> bool {
    let (b, d) = (W::of(b), W::of(d));
    let mut s = W::of(r);
    let start = s;
    loop {
        let y = b * s;
        if !allowed[(y / d).low() as usize] {
            return false;
        }
        s = y % d;
        if s == start {
            return true;
        }
    }
}

/// Membership of a reduced `a/d` in `[0, 1)` by walking residues: the
/// preperiod digits first, then either the terminating tail (both
/// representations) or the cycle.
pub(crate) fn residue_member(allowed: &[bool], b: u64, a: u64, d: u64) -> bool {
    if a == 0 {
        return allowed[0];
    }
    let t = super::preperiod_length(d, b);
    let (bb, dd) = (b as u128, d as u128);
    let mut r = a as u128;
    let mut head_ok = true;
    let mut last = 0u64;
    for i in 0..t {
        if i > 0 && !allowed[last as usize] {
            head_ok = false;
        }
        let y = bb * r;
        last = (y / dd) as u64;
        r = y % dd;
    }
    if r == 0 {
        // 0.c_1 ... c_t (0) or 0.c_1 ... (c_t - 1) (b - 1)
        let plain = allowed[last as usize] && allowed[0];
        let dual = allowed[(last - 1) as usize] && allowed[(b - 1) as usize];
        return head_ok && (plain || dual);
    }
    if t > 0 && !(head_ok && allowed[last as usize]) {
        return false;
    }
    cycle_ok::<u128>(allowed, b, r as u64, d)
}

/// Sorted numerators `a` in `[0, d]` with `a/d` in `C`. With `reduced_only`
/// only `gcd(a, d) = 1` is kept; otherwise reducible numerators are included,
/// found from the reduced members of every divisor of `d`.
pub fn members_with_denominator(ds: &DigitSet, d: u64, reduced_only: bool) -> Result<Vec<u64>> {
    if d == 0 {
        return Err(Error::OutOfDomain("denominator must be positive".into()));
    }
    let mut scanner = Scanner::new(ds);
    if reduced_only {
        return Ok(scanner.reduced_members(d));
    }
    let mut out = Vec::new();
    for e in factorize(d)?.divisors() {
        let scale = d / e;
        out.extend(scanner.reduced_members(e).into_iter().map(|a| a * scale));
    }
    out.sort_unstable();
    Ok(out)
}

fn pool(parallelism: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .map_err(|e| Error::Invariant(format!("thread pool: {e}")))
}

/// Every reduced member with denominator in `denominators`, sorted by
/// denominator, then numerator. The order is independent of `parallelism`.
pub fn enumerate_members(ds: &DigitSet, denominators: &[u64], parallelism: usize) -> Result<Vec<ReducedFraction>> {
    if denominators.contains(&0) {
        return Err(Error::OutOfDomain("denominator must be positive".into()));
    }
    let mut dens = denominators.to_vec();
    dens.sort_unstable();
    dens.dedup();
    let chunks: Vec<Vec<ReducedFraction>> = pool(parallelism)?.install(|| {
        dens.par_chunks(64)
            .map(|chunk| {
                let mut scanner = Scanner::new(ds);
                let mut out = Vec::new();
                for &d in chunk {
                    for a in scanner.reduced_members(d) {
                        out.push(ReducedFraction::new_unchecked(a, d));
                    }
                }
                out
            })
            .collect()
    });
    Ok(chunks.into_iter().flatten().collect())
}

/// Counts of members with denominator at most `max_den`, both reduced and
/// with multiplicity (`a/d` for every admissible `d`, reducible or not),
/// each with and without the endpoints `0` and `1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountSummary {
    pub base: u64,
    pub digits: Vec<u64>,
    pub max_den: u64,
    pub coprime_only: bool,
    pub reduced_with_endpoints: u64,
    pub reduced_without_endpoints: u64,
    pub all_with_endpoints: u64,
    pub all_without_endpoints: u64,
}

impl CountSummary {
    pub fn count(&self, reduced_only: bool, with_endpoints: bool) -> u64 {
        match (reduced_only, with_endpoints) {
            (true, true) => self.reduced_with_endpoints,
            (true, false) => self.reduced_without_endpoints,
            (false, true) => self.all_with_endpoints,
            (false, false) => self.all_without_endpoints,
        }
    }
}

/// Number of `m` in `1..=n` coprime to every prime in `primes`.
fn coprime_up_to(n: u64, primes: &[u64]) -> u64 {
    let mut total: i128 = 0;
    for mask in 0u32..(1 << primes.len()) {
        let mut prod = 1u64;
        let mut over = false;
        for (i, &p) in primes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                match prod.checked_mul(p) {
                    Some(x) if x <= n => prod = x,
                    _ => over = true,
                }
            }
        }
        if over {
            continue;
        }
        let term = (n / prod) as i128;
        total += if mask.count_ones() % 2 == 0 { term } else { -term };
    }
    total as u64
}

pub fn count_summary(ds: &DigitSet, max_den: u64, coprime_only: bool, parallelism: usize) -> Result<CountSummary> {
    if max_den == 0 {
        return Err(Error::OutOfDomain("max denominator must be at least 1".into()));
    }
    let b = ds.base();
    let base_primes: Vec<u64> = factorize(b)?.primes().collect();
    // number of admissible denominators that are multiples of d'
    let multiplicity = |d: u64| {
        let n = max_den / d;
        if coprime_only {
            coprime_up_to(n, &base_primes)
        } else {
            n
        }
    };
    let blocks: Vec<(u64, u64)> =
        (0..max_den.div_ceil(BLOCK)).map(|i| (i * BLOCK + 1, ((i + 1) * BLOCK).min(max_den))).collect();
    let partial: Vec<(u64, u64)> = pool(parallelism)?.install(|| {
        blocks
            .par_iter()
            .map(|&(lo, hi)| {
                let mut scanner = Scanner::new(ds);
                let (mut reduced, mut all) = (0u64, 0u64);
                for d in lo..=hi {
                    if coprime_only && d.gcd(&b) != 1 {
                        continue;
                    }
                    let n = scanner.reduced_members(d).len() as u64;
                    reduced += n;
                    all += n * multiplicity(d);
                }
                (reduced, all)
            })
            .collect()
    });
    let reduced: u64 = partial.iter().map(|p| p.0).sum();
    let all: u64 = partial.iter().map(|p| p.1).sum();
    let ends = ds.contains(0) as u64 + ds.contains(b - 1) as u64;
    Ok(CountSummary {
        base: b,
        digits: ds.digits().to_vec(),
        max_den,
        coprime_only,
        reduced_with_endpoints: reduced,
        reduced_without_endpoints: reduced - ends,
        all_with_endpoints: all,
        all_without_endpoints: all - ends * multiplicity(1),
    })
}

/// `|{a/d in C : d <= max_den}|` with the endpoints counted. Without
/// `reduced_only` each value is counted once per denominator it can be
/// written over.
pub fn count_members_up_to(ds: &DigitSet, max_den: u64, reduced_only: bool, coprime_only: bool) -> Result<u64> {
    Ok(count_summary(ds, max_den, coprime_only, 1)?.count(reduced_only, true))
}

/// All `d <= limit` whose prime factors lie in `primes`, ascending.
pub fn smooth_numbers(primes: &[u64], limit: u64) -> Vec<u64> {
    let mut out = vec![];
    if limit == 0 {
        return out;
    }
    out.push(1u64);
    for &p in primes {
        let mut i = 0;
        while i < out.len() {
            if let Some(x) = out[i].checked_mul(p).filter(|&x| x <= limit) {
                out.push(x);
            }
            i += 1;
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Which values the reported cardinality counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum EndpointConvention {
    WithEndpoints,
    #[default]
    WithoutEndpoints,
}

/// The finite list of `S`-integers in `C` together with the data that makes
/// the list provably complete.
#[derive(Debug, Clone, Serialize)]
pub struct SIntegerCertificate {
    pub base: u64,
    pub digits: Vec<u64>,
    pub primes: Vec<u64>,
    #[serde(serialize_with = "as_string")]
    pub epsilon: BigRational,
    #[serde(serialize_with = "as_string")]
    pub largest_gap: BigRational,
    #[serde(rename = "D", serialize_with = "as_string")]
    pub density_bound: BigRational,
    #[serde(serialize_with = "as_string")]
    pub max_den_scanned: num_bigint::BigUint,
    pub denominators_scanned: usize,
    pub members: Vec<ReducedFraction>,
    pub count_with_endpoints: usize,
    pub count_without_endpoints: usize,
    pub convention: EndpointConvention,
    pub cardinality: usize,
    pub justification: String,
}

/// Lists every member of `C` whose denominator is an `S`-integer.
///
/// Denominators above `D = prod p^{N_p} / (2 epsilon)` need no scan: their
/// orbits leave no gap of length `2 epsilon`, while `C` (invariant under
/// `T_b`) misses a gap of length `2 * certificate_epsilon`. `epsilon`
/// defaults to [`DigitSet::certificate_epsilon`] and may not exceed it.
pub fn enumerate_s_integers(
    ds: &DigitSet,
    profile: &OrderProfile,
    epsilon: Option<&BigRational>,
    convention: EndpointConvention,
    parallelism: usize,
) -> Result<SIntegerCertificate> {
    if profile.base() != ds.base() {
        return Err(Error::InvalidDigits(format!(
            "profile base {} differs from digit set base {}",
            profile.base(),
            ds.base()
        )));
    }
    let bound = ds.certificate_epsilon()?;
    let epsilon = match epsilon {
        Some(e) => {
            positive_epsilon(e)?;
            if *e > bound {
                return Err(Error::EpsilonTooLarge { epsilon: e.to_string(), bound: bound.to_string() });
            }
            e.clone()
        }
        None => bound.clone(),
    };
    let big_d = density_bound(profile, &epsilon)?;
    let limit = floor_bound(&big_d);
    let limit_u64 = crate::numtheory::big_to_u64(&limit, "density bound D")?;
    let dens = smooth_numbers(profile.primes(), limit_u64);
    let mut members = enumerate_members(ds, &dens, parallelism)?;
    members.sort_unstable();
    let with = members.len();
    let without = members.iter().filter(|x| !x.is_endpoint()).count();
    let cardinality = match convention {
        EndpointConvention::WithEndpoints => with,
        EndpointConvention::WithoutEndpoints => without,
    };
    let justification = format!(
        "every S-smooth d <= {limit} was scanned; for d > D the orbit of a/d has all gaps below 2*epsilon = {}, \
         but C omits a gap of length {}",
        &epsilon * BigRational::from_integer(2.into()),
        ds.largest_gap()
    );
    Ok(SIntegerCertificate {
        base: ds.base(),
        digits: ds.digits().to_vec(),
        primes: profile.primes().to_vec(),
        largest_gap: ds.largest_gap(),
        epsilon,
        density_bound: big_d,
        max_den_scanned: limit,
        denominators_scanned: dens.len(),
        members,
        count_with_endpoints: with,
        count_without_endpoints: without,
        convention,
        cardinality,
        justification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::member;

    fn naive(ds: &DigitSet, d: u64) -> Vec<u64> {
        (0..=d).filter(|&a| a.gcd(&d) == 1 && member(ds, ReducedFraction::new(a, d).unwrap())).collect()
    }

    #[test]
    fn agrees_with_naive_scan() {
        let sets = [
            DigitSet::new(3, [0, 2]).unwrap(),
            DigitSet::new(3, [1]).unwrap(),
            DigitSet::new(3, [0, 1]).unwrap(),
            DigitSet::new(4, [1, 2]).unwrap(),
            DigitSet::new(5, [0, 2, 4]).unwrap(),
            DigitSet::new(10, [0, 5, 9]).unwrap(),
            DigitSet::new(2, [0, 1]).unwrap(),
            DigitSet::new(2, [1]).unwrap(),
            DigitSet::new(6, [0, 1, 3, 5]).unwrap(),
        ];
        for ds in &sets {
            let mut scanner = Scanner::new(ds);
            for d in 1..=700 {
                assert_eq!(scanner.reduced_members(d), naive(ds, d), "{ds} d = {d}");
            }
        }
    }

    #[test]
    fn residue_walk_matches_expansion() {
        for b in 2..=7u64 {
            for mask in 1u32..(1 << b) {
                let ds = DigitSet::new(b, (0..b).filter(|c| mask >> c & 1 == 1)).unwrap();
                for d in 2..=60u64 {
                    for a in (1..d).filter(|a| a.gcd(&d) == 1) {
                        let x = ReducedFraction::new(a, d).unwrap();
                        assert_eq!(residue_member(ds.allowed(), b, a, d), member(&ds, x), "{ds} {x}");
                    }
                }
            }
        }
    }

    #[test]
    fn dyadic_members_of_the_middle_thirds_set() {
        let ds = DigitSet::new(3, [0, 2]).unwrap();
        let dens: Vec<u64> = (1..=20).map(|k| 1u64 << k).collect();
        let got = enumerate_members(&ds, &dens, 2).unwrap();
        let want: Vec<_> = ["1/4", "3/4"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn triadic_counts() {
        let ds = DigitSet::new(3, [0, 2]).unwrap();
        for n in 0..=8u32 {
            let d = 3u64.pow(n);
            assert_eq!(members_with_denominator(&ds, d, false).unwrap().len(), 1 << (n + 1), "n = {n}");
        }
    }

    #[test]
    fn full_digit_set_takes_everything() {
        let ds = DigitSet::new(2, [0, 1]).unwrap();
        for d in 1..=50u64 {
            assert_eq!(members_with_denominator(&ds, d, false).unwrap(), (0..=d).collect::<Vec<_>>());
        }
    }

    #[test]
    fn small_counts() {
        let ds = DigitSet::new(3, [0, 2]).unwrap();
        assert_eq!(count_members_up_to(&ds, 1, true, false).unwrap(), 2);
        // 1/3 and 2/3 are in C as well
        assert_eq!(count_members_up_to(&ds, 4, true, false).unwrap(), 6);
        assert_eq!(count_members_up_to(&ds, 4, true, true).unwrap(), 4);
        let s = count_summary(&ds, 4, false, 1).unwrap();
        // 0/1 1/1, 0/2 2/2, 0/3 .. 3/3, 0/4 1/4 3/4 4/4
        assert_eq!(s.all_with_endpoints, 2 + 2 + 4 + 4);
    }

    #[test]
    fn counts_match_naive_oracle() {
        for ds in [DigitSet::new(3, [0, 2]).unwrap(), DigitSet::new(4, [0, 3]).unwrap(), DigitSet::new(5, [1, 3]).unwrap()]
        {
            let b = ds.base();
            for coprime in [false, true] {
                let (mut reduced, mut all) = (0u64, 0u64);
                for d in (1..=300u64).filter(|d| !coprime || d.gcd(&b) == 1) {
                    for a in 0..=d {
                        if member(&ds, ReducedFraction::new(a, d).unwrap()) {
                            all += 1;
                            reduced += (a.gcd(&d) == 1) as u64;
                        }
                    }
                }
                let s = count_summary(&ds, 300, coprime, 3).unwrap();
                assert_eq!((s.reduced_with_endpoints, s.all_with_endpoints), (reduced, all), "{ds} {coprime}");
            }
        }
    }

    #[test]
    fn parallelism_does_not_change_counts() {
        let ds = DigitSet::new(3, [0, 2]).unwrap();
        let one = count_summary(&ds, 5000, false, 1).unwrap();
        for p in [2, 3, 8] {
            assert_eq!(count_summary(&ds, 5000, false, p).unwrap(), one);
        }
        let dens: Vec<u64> = (1..=3000).rev().collect();
        assert_eq!(enumerate_members(&ds, &dens, 1).unwrap(), enumerate_members(&ds, &dens, 5).unwrap());
    }

    #[test]
    fn inclusion_exclusion() {
        for n in 0..200u64 {
            let direct = (1..=n).filter(|m| m % 2 != 0 && m % 5 != 0).count() as u64;
            assert_eq!(coprime_up_to(n, &[2, 5]), direct);
        }
    }

    #[test]
    fn smooth_number_lists() {
        assert_eq!(smooth_numbers(&[2, 5], 40), vec![1, 2, 4, 5, 8, 10, 16, 20, 25, 32, 40]);
        assert_eq!(smooth_numbers(&[7], 1), vec![1]);
        assert!(smooth_numbers(&[3], 0).is_empty());
    }

    #[test]
    fn fourteen_s_integers() {
        let ds = DigitSet::new(3, [0, 2]).unwrap();
        let profile = OrderProfile::new(3, [2, 5]).unwrap();
        let cert = enumerate_s_integers(&ds, &profile, None, EndpointConvention::default(), 2).unwrap();
        assert_eq!(cert.density_bound, BigRational::from_integer(240.into()));
        assert_eq!((cert.count_with_endpoints, cert.count_without_endpoints), (16, 14));
        assert_eq!(cert.cardinality, 14);
        let strs: Vec<String> = cert.members.iter().map(|x| x.to_string()).collect();
        assert_eq!(
            strs,
            [
                "0/1", "1/40", "3/40", "1/10", "9/40", "1/4", "3/10", "13/40", "27/40", "7/10", "3/4", "31/40",
                "9/10", "37/40", "39/40", "1/1"
            ]
        );
    }

    #[test]
    fn certificate_is_complete_against_a_full_scan() {
        let ds = DigitSet::new(3, [0, 2]).unwrap();
        let profile = OrderProfile::new(3, [7]).unwrap();
        let cert = enumerate_s_integers(&ds, &profile, None, EndpointConvention::WithEndpoints, 1).unwrap();
        let limit = crate::numtheory::big_to_u64(&cert.max_den_scanned, "D").unwrap();
        let mut scan = vec![];
        for d in 1..=limit {
            if factorize(d).unwrap().primes().all(|p| p == 7) {
                scan.extend(naive(&ds, d).into_iter().map(|a| ReducedFraction::new(a, d).unwrap()));
            }
        }
        scan.sort();
        assert_eq!(cert.members, scan);
        assert!(cert.members.iter().all(|&x| member(&ds, x)));
    }

    #[test]
    fn certificate_rejects_bad_epsilon() {
        let ds = DigitSet::new(3, [0, 2]).unwrap();
        let profile = OrderProfile::new(3, [2]).unwrap();
        let too_big = BigRational::new(1.into(), 5.into());
        assert!(matches!(
            enumerate_s_integers(&ds, &profile, Some(&too_big), EndpointConvention::default(), 1),
            Err(Error::EpsilonTooLarge { .. })
        ));
        let full = DigitSet::new(3, [0, 1, 2]).unwrap();
        assert_eq!(
            enumerate_s_integers(&full, &profile, None, EndpointConvention::default(), 1).unwrap_err(),
            Error::FullDigitSet
        );
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn counts_do_not_depend_on_parallelism(b in 2u64..=7, mask in 1u64..128, t in 1u64..2_000, threads in 2usize..6) {
            let digits: Vec<u64> = (0..b).filter(|c| mask >> c & 1 == 1).collect();
            prop_assume!(!digits.is_empty());
            let ds = DigitSet::new(b, digits).unwrap();
            for coprime in [false, true] {
                prop_assert_eq!(count_summary(&ds, t, coprime, 1).unwrap(), count_summary(&ds, t, coprime, threads).unwrap());
            }
        }
    }
}
