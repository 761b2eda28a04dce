//! Exact dynamics of `T_b(x) = b x mod 1` on rationals.

use std::collections::{BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fraction::{as_string, positive_epsilon, ReducedFraction};
use crate::numtheory::factorize;
use crate::orders::{DenominatorSplit, OrderProfile};

/// One application of `T_b`. Rejects `x = 1`.
pub fn apply_tb(b: u64, x: ReducedFraction) -> Result<ReducedFraction> {
    if x == ReducedFraction::ONE {
        return Err(Error::OutOfDomain("T_b is defined on [0, 1); got 1/1".into()));
    }
    let d = x.den();
    let num = ((b as u128 * x.num() as u128) % d as u128) as u64;
    ReducedFraction::new(num, d)
}

/// Points visited from a starting fraction, in first-visit order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub base: u64,
    pub points: Vec<ReducedFraction>,
    pub preperiod: usize,
    pub period: usize,
}

impl Orbit {
    pub fn cycle(&self) -> &[ReducedFraction] {
        &self.points[self.preperiod..]
    }

    pub fn transient(&self) -> &[ReducedFraction] {
        &self.points[..self.preperiod]
    }
}

/// Iterates `T_b` until the first repeated point. Works for any denominator;
/// when `gcd(d, b) = 1` the orbit is purely periodic.
pub fn orbit(b: u64, x: ReducedFraction) -> Result<Orbit> {
    if b < 2 {
        return Err(Error::InvalidBase(b));
    }
    let mut seen: HashMap<ReducedFraction, usize> = HashMap::new();
    let mut points = Vec::new();
    let mut cur = x;
    loop {
        if let Some(&first) = seen.get(&cur) {
            let period = points.len() - first;
            return Ok(Orbit { base: b, points, preperiod: first, period });
        }
        seen.insert(cur, points.len());
        points.push(cur);
        cur = apply_tb(b, cur)?;
    }
}

/// The two descriptions of the orbit of `a/d`: direct iteration (`a1`) and
/// the `d0`-fold comb of the orbit of `a/d1` (`a2`). Both are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitDecomposition {
    pub base: u64,
    pub fraction: ReducedFraction,
    pub split: DenominatorSplit,
    pub order: u64,
    pub a1: Vec<ReducedFraction>,
    pub a2: Vec<ReducedFraction>,
    pub a1_equals_a2: bool,
}

fn iterate(b: u64, start: ReducedFraction, steps: u64) -> Result<Vec<ReducedFraction>> {
    let mut out = Vec::with_capacity(steps as usize);
    let mut cur = start;
    for _ in 0..steps {
        out.push(cur);
        cur = apply_tb(b, cur)?;
    }
    Ok(out)
}

/// Builds both point sets for `x = a/d` with `d` supported on the profile's
/// primes. `a2` starts from `(a mod d1)/d1`, the fractional part of `a/d1`.
pub fn decompose(profile: &OrderProfile, x: ReducedFraction) -> Result<OrbitDecomposition> {
    let b = profile.base();
    let d = x.den();
    if d.gcd(&b) != 1 {
        return Err(Error::DenominatorNotCoprime { den: d, base: b });
    }
    if x == ReducedFraction::ONE {
        return Err(Error::OutOfDomain("decomposition needs a point of [0, 1)".into()));
    }
    let fd = factorize(d)?;
    let split = profile.split_denominator(&fd)?;
    let order = profile.order_of(&fd)?;

    let mut a1 = iterate(b, x, order)?;
    a1.sort_unstable();
    a1.dedup();
    if a1.len() as u64 != order {
        return Err(Error::Invariant(format!(
            "orbit of {x} has {} distinct points, expected ord = {order}",
            a1.len()
        )));
    }

    let DenominatorSplit { d0, d1, .. } = split;
    let inner_start = ReducedFraction::new(x.num() % d1, d1)?;
    let inner_order = profile.order_of(&factorize(d1)?)?;
    let inner = iterate(b, inner_start, inner_order)?;
    let mut a2 = Vec::with_capacity((d0 * inner_order) as usize);
    for y in &inner {
        // y = u / d1 in lowest terms, so (u + j d1) / d is already reduced
        let u = y.num() * (d1 / y.den());
        for j in 0..d0 {
            a2.push(ReducedFraction::new(u + j * d1, d)?);
        }
    }
    a2.sort_unstable();
    a2.dedup();
    if a1.len() != a2.len() {
        return Err(Error::Invariant(format!(
            "|A1| = {} but d0 * ord(b, d1) = {} for {x}",
            a1.len(),
            a2.len()
        )));
    }
    let a1_equals_a2 = a1 == a2;
    Ok(OrbitDecomposition { base: b, fraction: x, split, order, a1, a2, a1_equals_a2 })
}

/// Exact covering data for a finite point set in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub points: Vec<ReducedFraction>,
    /// `sup_{x in [0,1]} dist(x, points)`: end gaps at full length, interior
    /// gaps at half.
    #[serde(serialize_with = "as_string")]
    pub cover_radius: BigRational,
    /// Half of the largest gap, end gaps included.
    #[serde(serialize_with = "as_string")]
    pub gap_radius: BigRational,
    #[serde(serialize_with = "as_string")]
    pub epsilon: BigRational,
    /// `cover_radius <= epsilon`
    pub is_dense: bool,
}

pub fn density_report(points: &[ReducedFraction], epsilon: &BigRational) -> Result<DensityReport> {
    if points.is_empty() {
        return Err(Error::EmptyInput("density of an empty point set"));
    }
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    let r = |x: &ReducedFraction| x.to_rational();
    let one = BigRational::from_integer(BigInt::from(1));
    let left = r(&pts[0]);
    let right = &one - r(pts.last().unwrap());
    let mut interior = BigRational::zero();
    for w in pts.windows(2) {
        let gap = r(&w[1]) - r(&w[0]);
        if gap > interior {
            interior = gap;
        }
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let half_interior = &interior / &two;
    let cover_radius = left.clone().max(right.clone()).max(half_interior);
    let gap_radius = left.max(right).max(interior) / two;
    let is_dense = cover_radius <= *epsilon;
    Ok(DensityReport { points: pts, cover_radius, gap_radius, epsilon: epsilon.clone(), is_dense })
}

/// `D = prod_{p in S} p^{N_p} / (2 epsilon)`, exact.
pub fn density_bound(profile: &OrderProfile, epsilon: &BigRational) -> Result<BigRational> {
    positive_epsilon(epsilon)?;
    let prod = BigInt::from(profile.threshold_product());
    Ok(BigRational::from_integer(prod) / (epsilon * BigInt::from(2)))
}

/// Largest divisor of `d` coprime to `b`.
pub fn coprime_part(d: u64, b: u64) -> u64 {
    let mut d = d;
    loop {
        let g = d.gcd(&b);
        if g == 1 {
            return d;
        }
        d /= g;
    }
}

/// `S' = S + {p | d' : p prime, p does not divide b}`.
pub fn extend_prime_set(primes: &BTreeSet<u64>, d_prime: u64, b: u64) -> Result<BTreeSet<u64>> {
    let mut out = primes.clone();
    for p in factorize(d_prime)?.primes() {
        if b % p != 0 {
            out.insert(p);
        }
    }
    Ok(out)
}

/// Integer part of `D`; denominators above it are covered by the density bound.
pub fn floor_bound(d: &BigRational) -> BigUint {
    d.floor().to_integer().to_biguint().unwrap_or_default()
}


#[cfg(test)]
mod properties {
    use super::*;
    use crate::numtheory::mult_order_bruteforce;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn coprime_orbits_are_purely_periodic(b in 2u64..=30, d in 2u64..=5_000, a in 0u64..5_000) {
            prop_assume!(d.gcd(&b) == 1);
            let x = ReducedFraction::new(a % d, d).unwrap();
            let o = orbit(b, x).unwrap();
            prop_assert_eq!(o.preperiod, 0);
            prop_assert_eq!(o.period as u64, mult_order_bruteforce(b, x.den()).unwrap());
        }

        /// Union of the orbits of several S-integers above D: every gap,
        /// ends included, stays below 2 eps.
        #[test]
        fn orbit_unions_above_the_bound_are_dense(
            b in 2u64..=10,
            eps_den in 2u64..=12,
            picks in prop::collection::vec((1u64..=6, 0u64..1_000_000), 20),
        ) {
            let primes: Vec<u64> = [2u64, 3, 5, 7].into_iter().filter(|p| b % p != 0).collect();
            let profile = OrderProfile::new(b, primes.iter().copied()).unwrap();
            let eps = BigRational::new(1.into(), eps_den.into());
            let big_d = density_bound(&profile, &eps).unwrap();
            let floor_d: u64 = floor_bound(&big_d).try_into().unwrap();
            prop_assume!(floor_d < 600);
            let mut points = vec![];
            for (k, seed) in picks {
                // a denominator just above D made of the allowed primes
                let p = primes[(seed % primes.len() as u64) as usize];
                let mut d = p.pow(k as u32);
                while d <= floor_d {
                    d *= p;
                }
                let x = ReducedFraction::new(seed % d, d).unwrap();
                points.extend(orbit(b, x).unwrap().points);
            }
            prop_assert!(density_report(&points, &eps).unwrap().gap_radius < eps);
        }
    }
}
