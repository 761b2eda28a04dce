//! Empirical constants for the lower bounds on `P(d)` and `rad(d)`.
//!
//! Logarithms are natural and evaluated in `f64`; everything that decides
//! whether a report exists at all (`gcd` conditions, `eps d >= 3`) is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::cantor::{enumerate_members, DigitSet};
use crate::error::{Error, Result};
use crate::fraction::{as_string, positive_epsilon, ReducedFraction};
use crate::numtheory::factorize;
use crate::orders::OrderProfile;

pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    #[serde(rename = "P>b")]
    Above,
    #[serde(rename = "P<b")]
    Below,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::Above => "P>b",
            Branch::Below => "P<b",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub base: u64,
    pub fraction: ReducedFraction,
    #[serde(serialize_with = "as_string")]
    pub epsilon: BigRational,
    #[serde(rename = "P")]
    pub largest_prime: u64,
    pub rad: u64,
    pub branch: Branch,
    /// `P(d)`
    pub lhs: f64,
    /// The bound without its constant: `sqrt(log(2 eps d) log log(2 eps d) / log b)`
    /// above `b`, `sqrt(log(2 eps d) / log b)` below.
    pub rhs: f64,
    #[serde(rename = "K_emp")]
    pub k_emp: f64,
    pub c_emp_rad: f64,
    #[serde(rename = "c_emp_P")]
    pub c_emp_p: f64,
    /// `log(2 eps d) / ((P^2 / log P) log b)`
    pub p_ratio: f64,
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Report for one `a/d`, or `None` when `eps d < 3`.
pub fn bound_report(b: u64, epsilon: &BigRational, x: ReducedFraction) -> Result<Option<BoundReport>> {
    if b < 2 {
        return Err(Error::InvalidBase(b));
    }
    positive_epsilon(epsilon)?;
    if *epsilon > BigRational::from_integer(1.into()) {
        return Err(Error::OutOfDomain(format!("epsilon {epsilon} exceeds 1")));
    }
    let (a, d) = (x.num() as u128, x.den() as u128);
    if (a * b as u128).gcd(&d) != 1 {
        return Err(Error::OutOfDomain(format!("gcd(a b, d) > 1 for {x} in base {b}")));
    }
    let eps_d = epsilon * BigInt::from(x.den());
    if eps_d < BigRational::from_integer(3.into()) {
        return Ok(None);
    }
    let f = factorize(x.den())?;
    let p = f.largest_prime().expect("d >= 3");
    let branch = if p > b { Branch::Above } else { Branch::Below };
    let log_b = (b as f64).ln();
    let l = to_f64(&(eps_d * BigInt::from(2))).ln();
    let inner = match branch {
        Branch::Above => l * l.ln() / log_b,
        Branch::Below => l / log_b,
    };
    let (pf, df) = (p as f64, x.den() as f64);
    let rhs = inner.sqrt();
    Ok(Some(BoundReport {
        base: b,
        fraction: x,
        epsilon: epsilon.clone(),
        largest_prime: p,
        rad: f.radical(),
        branch,
        lhs: pf,
        rhs,
        k_emp: pf / rhs,
        c_emp_rad: f.radical() as f64 / df.ln(),
        c_emp_p: pf / (df.ln() * df.ln().ln()).sqrt(),
        p_ratio: l / (pf * pf / pf.ln() * log_b),
    }))
}

/// Minima of the empirical constants, with the fractions attaining them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantSummary {
    pub count: usize,
    #[serde(rename = "K_emp_min")]
    pub k_emp_min: f64,
    #[serde(rename = "K_emp_argmin")]
    pub k_emp_argmin: ReducedFraction,
    pub c_emp_rad_min: f64,
    pub c_emp_rad_argmin: ReducedFraction,
    #[serde(rename = "c_emp_P_min")]
    pub c_emp_p_min: f64,
    #[serde(rename = "c_emp_P_argmin")]
    pub c_emp_p_argmin: ReducedFraction,
    /// Largest `log(2 eps d) / ((P^2 / log P) log b)` seen.
    pub p_ratio_max: f64,
    pub log: &'static str,
}

/// Folds reports into minima. Ties go to the smaller denominator, then the
/// smaller numerator, so the result does not depend on input order.
pub fn aggregate_constants(reports: &[BoundReport]) -> Result<ConstantSummary> {
    let first = reports.first().ok_or(Error::EmptyInput("no bound reports to aggregate"))?;
    let key = |x: ReducedFraction| (x.den(), x.num());
    let pick = |best: &mut (f64, ReducedFraction), v: f64, x: ReducedFraction| {
        if v < best.0 || (v == best.0 && key(x) < key(best.1)) {
            *best = (v, x);
        }
    };
    let mut k = (first.k_emp, first.fraction);
    let mut rad = (first.c_emp_rad, first.fraction);
    let mut p = (first.c_emp_p, first.fraction);
    let mut ratio = first.p_ratio;
    for r in reports {
        pick(&mut k, r.k_emp, r.fraction);
        pick(&mut rad, r.c_emp_rad, r.fraction);
        pick(&mut p, r.c_emp_p, r.fraction);
        ratio = ratio.max(r.p_ratio);
    }
    Ok(ConstantSummary {
        count: reports.len(),
        k_emp_min: k.0,
        k_emp_argmin: k.1,
        c_emp_rad_min: rad.0,
        c_emp_rad_argmin: rad.1,
        c_emp_p_min: p.0,
        c_emp_p_argmin: p.1,
        p_ratio_max: ratio,
        log: "natural",
    })
}

/// Reports for every member `a/d` of `C` with `d <= max_den`,
/// `gcd(a b, d) = 1` and `eps d >= 3`, where `eps` is the sup-distance of
/// `C`. Sorted by denominator, then numerator.
pub fn collect_reports(ds: &DigitSet, max_den: u64, parallelism: usize) -> Result<Vec<BoundReport>> {
    let b = ds.base();
    let eps = ds.sup_distance();
    positive_epsilon(&eps).map_err(|_| Error::FullDigitSet)?;
    let dens: Vec<u64> = (2..=max_den).filter(|d| d.gcd(&b) == 1).collect();
    let mut out = Vec::new();
    for x in enumerate_members(ds, &dens, parallelism)? {
        if let Some(r) = bound_report(b, &eps, x)? {
            out.push(r);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdGrowthRow {
    pub p: u64,
    pub n: u32,
    #[serde(rename = "N")]
    pub big_n: u32,
    /// `max{3, 2 p log b / log p}`
    pub n_bound: f64,
    /// `n_p + max_q n_q log q / log p`
    pub big_n_bound: f64,
    pub n_slack: f64,
    pub big_n_slack: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdGrowthReport {
    pub base: u64,
    pub passes: bool,
    pub rows: Vec<ThresholdGrowthRow>,
}

/// Checks the thresholds of a profile against the explicit forms of
/// `n_p << p log b / log p` and `N_p << (p + P) log b / log p` that follow
/// from `v_p(x) <= log x / log p`.
pub fn threshold_growth_check(profile: &OrderProfile) -> ThresholdGrowthReport {
    let log_b = (profile.base() as f64).ln();
    let recs: Vec<(u64, u32, u32)> = profile.records().map(|(p, r)| (p, r.n, r.big_n)).collect();
    let rows: Vec<ThresholdGrowthRow> = recs
        .iter()
        .map(|&(p, n, big_n)| {
            let log_p = (p as f64).ln();
            let n_bound = 3f64.max(2.0 * p as f64 * log_b / log_p);
            let lift = recs.iter().map(|&(q, nq, _)| nq as f64 * (q as f64).ln() / log_p).fold(0.0, f64::max);
            let big_n_bound = n as f64 + lift;
            let within = |v: u32, bound: f64| v as f64 <= bound * (1.0 + TOLERANCE);
            ThresholdGrowthRow {
                p,
                n,
                big_n,
                n_bound,
                big_n_bound,
                n_slack: n_bound - n as f64,
                big_n_slack: big_n_bound - big_n as f64,
                ok: within(n, n_bound) && within(big_n, big_n_bound),
            }
        })
        .collect();
    ThresholdGrowthReport { base: profile.base(), passes: rows.iter().all(|r| r.ok), rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraction::parse_rational;
    use crate::numtheory::sieve;
    use proptest::prelude::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn f(s: &str) -> ReducedFraction {
        s.parse().unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= TOLERANCE * b.abs().max(1.0)
    }

    #[test]
    fn skips_small_eps_d() {
        assert_eq!(bound_report(3, &q("1/6"), f("1/4")).unwrap(), None);
        assert_eq!(bound_report(3, &q("1/6"), f("1/17")).unwrap(), None);
        assert!(bound_report(3, &q("1/6"), f("1/18")).is_err());
        assert!(bound_report(3, &q("1/6"), f("2/4")).is_ok());
        assert!(bound_report(3, &q("1/6"), f("1/19")).unwrap().is_some());
    }

    #[test]
    fn rejects_shared_factors() {
        assert!(bound_report(3, &q("1/6"), f("1/321")).is_err());
        assert!(bound_report(3, &q("1/6"), f("0/1")).is_ok());
        assert!(bound_report(3, &q("1/6"), f("2/34")).unwrap().is_none());
        assert!(bound_report(3, &q("0"), f("1/40")).is_err());
    }

    #[test]
    fn above_branch_value() {
        // d = 2^6 * 5, P = 5 > 3
        let r = bound_report(3, &q("1/6"), f("1/320")).unwrap().unwrap();
        assert_eq!((r.largest_prime, r.rad, r.branch), (5, 10, Branch::Above));
        let l = (320.0f64 / 3.0).ln();
        let want = 5.0 / (l * l.ln() / 3f64.ln()).sqrt();
        assert!(close(r.k_emp, want), "{} vs {want}", r.k_emp);
        assert!(close(r.c_emp_rad, 10.0 / 320f64.ln()));
        assert!(close(r.c_emp_p, 5.0 / (320f64.ln() * 320f64.ln().ln()).sqrt()));
    }

    #[test]
    fn below_branch_value() {
        let ds = DigitSet::new(10, 0..=8).unwrap();
        let eps = ds.sup_distance();
        assert_eq!(eps, q("1/9"));
        // 1/27 = 0.(037), eps d = 3
        let r = bound_report(10, &eps, f("1/27")).unwrap().unwrap();
        assert_eq!(r.branch, Branch::Below);
        let want = 3.0 / (6f64.ln() / 10f64.ln()).sqrt();
        assert!(close(r.k_emp, want));
        assert!(crate::cantor::member(&ds, f("1/27")));
        assert!(!crate::cantor::member(&ds, f("1/81")));
    }

    #[test]
    fn aggregation() {
        let a = bound_report(3, &q("1/6"), f("1/320")).unwrap().unwrap();
        let b = bound_report(3, &q("1/6"), f("1/19")).unwrap().unwrap();
        let one = aggregate_constants(std::slice::from_ref(&a)).unwrap();
        assert_eq!((one.k_emp_min, one.c_emp_rad_min, one.c_emp_p_min), (a.k_emp, a.c_emp_rad, a.c_emp_p));
        let twice = aggregate_constants(&[a.clone(), a.clone()]).unwrap();
        assert_eq!((twice.k_emp_min, twice.c_emp_p_min), (one.k_emp_min, one.c_emp_p_min));
        let both = aggregate_constants(&[a.clone(), b.clone()]).unwrap();
        let rev = aggregate_constants(&[b, a]).unwrap();
        assert_eq!(both, rev);
        assert!(aggregate_constants(&[]).is_err());
    }

    #[test]
    fn self_consistency_across_bases() {
        let sets = [
            DigitSet::new(3, [0, 2]).unwrap(),
            DigitSet::new(4, [0, 3]).unwrap(),
            DigitSet::new(5, [0, 2, 4]).unwrap(),
            DigitSet::new(10, [0, 5, 9]).unwrap(),
        ];
        for ds in &sets {
            let reports = collect_reports(ds, 20_000, 2).unwrap();
            assert!(!reports.is_empty(), "{ds}");
            let s = aggregate_constants(&reports).unwrap();
            assert!(s.k_emp_min > 0.0 && s.c_emp_rad_min > 0.0 && s.c_emp_p_min > 0.0);
            for r in &reports {
                assert!(crate::cantor::member(ds, r.fraction));
                assert!(r.k_emp.is_finite() && r.k_emp > 0.0);
                assert!(r.lhs >= s.k_emp_min * r.rhs * (1.0 - TOLERANCE));
                let l = (2.0 * to_f64(&r.epsilon) * r.fraction.den() as f64).ln();
                let p = r.largest_prime as f64;
                assert!(l <= s.p_ratio_max * p * p / p.ln() * (ds.base() as f64).ln() * (1.0 + TOLERANCE));
            }
        }
    }

    #[test]
    fn lowering_epsilon_only_drops_reports() {
        let x = f("1/40");
        for (hi, lo) in [("1/6", "1/12"), ("1/6", "3/40"), ("1/2", "1/6")] {
            let with_hi = bound_report(3, &q(hi), x).unwrap().is_some();
            let with_lo = bound_report(3, &q(lo), x).unwrap().is_some();
            assert!(with_hi || !with_lo);
        }
        assert!(bound_report(3, &q("3/40"), x).unwrap().is_some());
        assert!(bound_report(3, &q("1/14"), x).unwrap().is_none());
    }

    #[test]
    fn threshold_growth_examples() {
        let r = threshold_growth_check(&OrderProfile::new(3, [2, 5]).unwrap());
        assert!(r.passes);
        assert_eq!((r.rows[0].n, r.rows[0].big_n), (3, 4));
        assert!(threshold_growth_check(&OrderProfile::new(2, [3]).unwrap()).passes);
        let w = OrderProfile::new(2, [1093]).unwrap();
        assert_eq!(w.record(1093).unwrap().n, 2);
        assert!(threshold_growth_check(&w).passes);
    }

    #[test]
    fn threshold_growth_full_sets() {
        let primes = sieve(100);
        for b in 2..=50u64 {
            let set: Vec<u64> = primes.iter().copied().filter(|p| b % p != 0).collect();
            let r = threshold_growth_check(&OrderProfile::new(b, set).unwrap());
            assert!(r.passes, "b = {b}: {:?}", r.rows.iter().find(|r| !r.ok));
        }
    }

    proptest! {
        #[test]
        fn threshold_growth_random_subsets(b in 2u64..=50, mask in 1u32..(1 << 25)) {
            let set: Vec<u64> = sieve(100)
                .into_iter()
                .enumerate()
                .filter(|&(i, p)| mask >> i & 1 == 1 && b % p != 0)
                .map(|(_, p)| p)
                .collect();
            prop_assume!(!set.is_empty());
            prop_assert!(threshold_growth_check(&OrderProfile::new(b, set).unwrap()).passes);
        }
    }
}
