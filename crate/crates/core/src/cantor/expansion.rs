use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::DigitSet;
use crate::error::{Error, Result};
use crate::fraction::ReducedFraction;

/// An eventually periodic base-`b` expansion `0.pre (period)`.
///
/// Canonical form: shortest preperiod, then shortest period; terminating
/// values carry period `[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expansion {
    #[serde(skip)]
    pub base: u64,
    pub preperiod: Vec<u64>,
    pub period: Vec<u64>,
}

impl Expansion {
    pub fn is_terminating(&self) -> bool {
        self.period == [0]
    }

    /// Exact value `pre / b^t + per / ((b^L - 1) b^t)`.
    pub fn value(&self) -> BigRational {
        let b = BigInt::from(self.base);
        let digits_value = |ds: &[u64]| ds.iter().fold(BigInt::zero(), |acc, &c| acc * &b + c);
        let bt = b.pow(self.preperiod.len() as u32);
        let bl = b.pow(self.period.len() as u32);
        let pre = BigRational::new(digits_value(&self.preperiod), bt.clone());
        let per = BigRational::new(digits_value(&self.period), (bl - 1u32) * bt);
        pre + per
    }

    /// The other expansion of a nonzero terminating value: last nonzero
    /// digit decremented, then `b - 1` repeated.
    pub fn dual(&self) -> Option<Expansion> {
        if !self.is_terminating() {
            return None;
        }
        let (last, head) = self.preperiod.split_last()?;
        let mut preperiod = head.to_vec();
        preperiod.push(last - 1);
        Some(Expansion { base: self.base, preperiod, period: vec![self.base - 1] })
    }

    pub fn uses_only(&self, ds: &DigitSet) -> bool {
        self.preperiod.iter().chain(&self.period).all(|&c| ds.contains(c))
    }
}

/// Number of `T_b` steps until the denominator `d` loses every prime factor
/// it shares with `b`; equals `max_{p | b} ceil(v_p(d) / v_p(b))`.
pub fn preperiod_length(d: u64, b: u64) -> u32 {
    let mut d = d;
    let mut t = 0;
    loop {
        let g = d.gcd(&b);
        if g == 1 {
            return t;
        }
        d /= g;
        t += 1;
    }
}

/// Canonical base-`b` expansion of `x` in `[0, 1)`.
pub fn expand(b: u64, x: ReducedFraction) -> Result<Expansion> {
    if b < 2 {
        return Err(Error::InvalidBase(b));
    }
    if x == ReducedFraction::ONE {
        return Err(Error::OutOfDomain("expansions are taken on [0, 1); got 1/1".into()));
    }
    let d = x.den() as u128;
    let bb = b as u128;
    let mut r = x.num() as u128;
    let next = |r: &mut u128| {
        let y = bb * *r;
        *r = y % d;
        (y / d) as u64
    };
    let t = preperiod_length(x.den(), b);
    let preperiod: Vec<u64> = (0..t).map(|_| next(&mut r)).collect();
    if r == 0 {
        return Ok(Expansion { base: b, preperiod, period: vec![0] });
    }
    let start = r;
    let mut period = Vec::new();
    loop {
        period.push(next(&mut r));
        if r == start {
            break;
        }
    }
    Ok(Expansion { base: b, preperiod, period })
}

/// Whether some base-`b` expansion of `x` in `[0, 1]` uses only digits of `ds`.
pub fn member(ds: &DigitSet, x: ReducedFraction) -> bool {
    if x == ReducedFraction::ONE {
        return ds.contains(ds.base() - 1);
    }
    let e = expand(ds.base(), x).expect("x lies in [0, 1)");
    e.uses_only(ds) || e.dual().is_some_and(|alt| alt.uses_only(ds))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> ReducedFraction {
        s.parse().unwrap()
    }

    /// Digit-by-digit long division with a visited table, kept separate from
    /// `expand` so it can serve as the oracle.
    fn long_division(b: u64, a: u64, d: u64) -> (Vec<u64>, Vec<u64>) {
        let mut seen = std::collections::HashMap::new();
        let mut digits = Vec::new();
        let mut r = a;
        while !seen.contains_key(&r) {
            seen.insert(r, digits.len());
            digits.push(b * r / d);
            r = b * r % d;
        }
        let period = digits.split_off(seen[&r]);
        shortest_preperiod(digits, period)
    }

    fn shortest_preperiod(mut pre: Vec<u64>, mut period: Vec<u64>) -> (Vec<u64>, Vec<u64>) {
        while let (Some(&p), Some(&l)) = (pre.last(), period.last()) {
            if p != l {
                break;
            }
            pre.pop();
            period.rotate_right(1);
        }
        (pre, period)
    }

    #[test]
    fn expansion_examples() {
        let e = expand(3, f("1/4")).unwrap();
        assert_eq!((e.preperiod.clone(), e.period.clone()), (vec![], vec![0, 2]));
        let e = expand(3, f("1/3")).unwrap();
        assert_eq!((e.preperiod.clone(), e.period.clone()), (vec![1], vec![0]));
        let e = expand(2, f("1/12")).unwrap();
        assert_eq!((e.preperiod.clone(), e.period.clone()), (vec![0, 0], vec![0, 1]));
        let e = expand(10, f("0/1")).unwrap();
        assert_eq!((e.preperiod.clone(), e.period.clone()), (vec![], vec![0]));
        assert!(expand(3, f("1/1")).is_err());
    }

    #[test]
    fn expansion_matches_long_division() {
        for b in [2u64, 3, 10] {
            for d in 1..=400u64 {
                for a in 0..d {
                    if a.gcd(&d) != 1 {
                        continue;
                    }
                    let e = expand(b, f(&format!("{a}/{d}"))).unwrap();
                    let (pre, per) = long_division(b, a, d);
                    assert_eq!((e.preperiod, e.period), (pre, per), "{a}/{d} base {b}");
                }
            }
        }
    }

    #[test]
    fn reconstruction_and_shape() {
        for b in [2u64, 3, 10] {
            for d in 1..=500u64 {
                let tail = crate::orbit::coprime_part(d, b);
                let ord = crate::numtheory::mult_order(b, tail).unwrap();
                for a in (0..d).filter(|a| a.gcd(&d) == 1) {
                    let x = ReducedFraction::new(a, d).unwrap();
                    let e = expand(b, x).unwrap();
                    assert_eq!(e.value(), x.to_rational(), "{x} base {b}");
                    assert_eq!(e.preperiod.len() as u32, preperiod_length(d, b));
                    assert_eq!(ord % e.period.len() as u64, 0);
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        let c = DigitSet::new(3, [0, 2]).unwrap();
        assert!(member(&c, f("1/4")));
        assert!(member(&c, f("3/4")));
        assert!(!member(&c, f("1/2")));
        assert!(member(&c, f("1/3")));
        assert!(member(&c, f("2/3")));
        assert!(member(&c, f("0/1")));
        assert!(member(&c, f("1/1")));
        assert!(!member(&c, f("4/9")));
        assert!(member(&c, f("1/9")));
        let c = DigitSet::new(3, [1]).unwrap();
        assert!(member(&c, f("1/2")));
        assert!(!member(&c, f("0/1")));
        assert!(!member(&c, f("1/1")));
        let full = DigitSet::new(2, [0, 1]).unwrap();
        assert!((0..=12).all(|a| member(&full, ReducedFraction::new(a, 12).unwrap())));
    }

    #[test]
    fn duals() {
        let e = expand(3, f("1/3")).unwrap();
        let alt = e.dual().unwrap();
        assert_eq!((alt.preperiod.clone(), alt.period.clone()), (vec![0], vec![2]));
        assert_eq!(alt.value(), e.value());
        assert!(expand(3, f("0/1")).unwrap().dual().is_none());
        assert!(expand(3, f("1/4")).unwrap().dual().is_none());
    }
}
