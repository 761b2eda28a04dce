//! Seeded randomized cross-checks between fast paths and direct computation.

use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cantor::{expand, member, members_with_denominator, DigitSet};
use crate::error::Result;
use crate::fraction::ReducedFraction;
use crate::numtheory::{factorize, mult_order_bruteforce};
use crate::orbit::{decompose, density_bound, density_report, orbit};
use crate::orders::OrderProfile;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

/// A random `(b, S, a/d)` with `gcd(d, b) = 1`, `S` the primes of `d` plus
/// possibly a few more, and `gcd(a, d) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub base: u64,
    pub primes: Vec<u64>,
    pub fraction: ReducedFraction,
}

const EXTRA_PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn random_instance(rng: &mut ChaCha8Rng, max_base: u64, max_den: u64) -> Instance {
    loop {
        let b = rng.gen_range(2..=max_base);
        let d = rng.gen_range(2..=max_den);
        if d.gcd(&b) != 1 {
            continue;
        }
        let mut primes: Vec<u64> = factorize(d).expect("d >= 2").primes().collect();
        for &p in &EXTRA_PRIMES {
            if b % p != 0 && rng.gen_bool(0.2) {
                primes.push(p);
            }
        }
        primes.sort_unstable();
        primes.dedup();
        let a = loop {
            let a = rng.gen_range(1..d);
            if a.gcd(&d) == 1 {
                break a;
            }
        };
        return Instance { base: b, primes, fraction: ReducedFraction::new(a, d).unwrap() };
    }
}

/// `count` instances with `b <= max_base` and `d <= max_den`, reproducible
/// from `seed`.
pub fn instances(count: usize, seed: u64, max_base: u64, max_den: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_instance(&mut rng, max_base, max_den)).collect()
}

fn random_digit_set(rng: &mut ChaCha8Rng, max_base: u64) -> DigitSet {
    let b = rng.gen_range(2..=max_base);
    loop {
        let digits: Vec<u64> = (0..b).filter(|_| rng.gen_bool(0.5)).collect();
        if !digits.is_empty() {
            return DigitSet::new(b, digits).unwrap();
        }
    }
}

impl CheckOutcome {
    fn new(name: &'static str) -> Self {
        CheckOutcome { name, trials: 0, failures: 0, first_failure: None }
    }

    fn record(&mut self, ok: Result<bool>, what: impl FnOnce() -> String) {
        self.trials += 1;
        let failure = match ok {
            Ok(true) => return,
            Ok(false) => what(),
            Err(e) => format!("{}: {e}", what()),
        };
        self.failures += 1;
        self.first_failure.get_or_insert(failure);
    }
}

fn check_order(inst: &Instance) -> Result<bool> {
    let profile = OrderProfile::new(inst.base, inst.primes.iter().copied())?;
    let d = inst.fraction.den();
    Ok(profile.order_of(&factorize(d)?)? == mult_order_bruteforce(inst.base, d)?)
}

fn check_decomposition(inst: &Instance) -> Result<bool> {
    let profile = OrderProfile::new(inst.base, inst.primes.iter().copied())?;
    let dec = decompose(&profile, inst.fraction)?;
    let want = dec.split.d0 * mult_order_bruteforce(inst.base, dec.split.d1)?;
    Ok(dec.a1_equals_a2 && dec.a1.len() as u64 == want)
}

/// Above the density bound every gap of the orbit, ends included, is
/// shorter than `2 eps`.
fn check_density(inst: &Instance, eps: &BigRational) -> Result<bool> {
    let profile = OrderProfile::new(inst.base, inst.primes.iter().copied())?;
    let big_d = density_bound(&profile, eps)?;
    if BigRational::from_integer(inst.fraction.den().into()) <= big_d {
        return Ok(true);
    }
    let o = orbit(inst.base, inst.fraction)?;
    Ok(density_report(&o.points, eps)?.gap_radius < *eps)
}

/// Members from the enumeration engine agree with digit-by-digit expansion.
fn check_membership(ds: &DigitSet, d: u64) -> Result<bool> {
    let fast = members_with_denominator(ds, d, true)?;
    let slow: Vec<u64> = (0..=d).filter(|&a| a.gcd(&d) == 1 && member(ds, ReducedFraction::new_unchecked(a, d))).collect();
    Ok(fast == slow)
}

fn check_expansion(b: u64, x: ReducedFraction) -> Result<bool> {
    Ok(expand(b, x)?.value() == x.to_rational())
}

/// Runs every check `trials` times with inputs drawn from `seed`.
pub fn run_checks(trials: usize, seed: u64) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order = CheckOutcome::new("order_formula_vs_bruteforce");
    let mut dec = CheckOutcome::new("orbit_decomposition");
    let mut dense = CheckOutcome::new("gaps_above_density_bound");
    let mut memb = CheckOutcome::new("enumeration_vs_expansion");
    let mut exp = CheckOutcome::new("expansion_reconstruction");
    let eps_choices = ["1/2", "1/3", "1/4", "1/6"];
    for _ in 0..trials {
        let inst = random_instance(&mut rng, 12, 100_000);
        order.record(check_order(&inst), || format!("b={} d={}", inst.base, inst.fraction.den()));

        let inst = random_instance(&mut rng, 10, 10_000);
        dec.record(check_decomposition(&inst), || format!("b={} x={}", inst.base, inst.fraction));

        let inst = random_instance(&mut rng, 10, 2_000);
        let eps: BigRational = eps_choices[rng.gen_range(0..eps_choices.len())].parse().unwrap();
        dense.record(check_density(&inst, &eps), || format!("b={} x={} eps={eps}", inst.base, inst.fraction));

        let ds = random_digit_set(&mut rng, 10);
        let d = rng.gen_range(1..=500);
        memb.record(check_membership(&ds, d), || format!("{ds} d={d}"));

        let b = rng.gen_range(2..=16);
        let d = rng.gen_range(1..=10_000u64);
        let x = ReducedFraction::new(rng.gen_range(0..d), d).unwrap();
        exp.record(check_expansion(b, x), || format!("b={b} x={x}"));
    }
    let checks = vec![order, dec, dense, memb, exp];
    let passed = checks.iter().all(|c| c.failures == 0);
    VerifyReport { seed, trials, checks, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_clean() {
        let a = run_checks(40, 7);
        assert!(a.passed, "{a:?}");
        assert_eq!(a, run_checks(40, 7));
        assert!(a.checks.iter().all(|c| c.trials == 40));
    }

    #[test]
    fn instances_are_well_formed() {
        let xs = instances(200, 1, 10, 10_000);
        assert_eq!(xs, instances(200, 1, 10, 10_000));
        for x in xs {
            let d = x.fraction.den();
            assert!(x.base <= 10 && d <= 10_000 && d.gcd(&x.base) == 1);
            assert!(factorize(d).unwrap().primes().all(|p| x.primes.contains(&p)));
        }
    }
}
