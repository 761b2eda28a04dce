use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fraction::as_string;

const MAX_BASE: u64 = 1 << 20;

/// A base `b` and a non-empty digit subset, defining the generalized Cantor
/// set `C(b, D)` of reals in `[0, 1]` with some base-`b` expansion using only
/// digits from `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitSet {
    base: u64,
    digits: Vec<u64>,
    allowed: Vec<bool>,
}

impl DigitSet {
    pub fn new<I: IntoIterator<Item = u64>>(base: u64, digits: I) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        if base > MAX_BASE {
            return Err(Error::InvalidDigits(format!("base {base} is larger than {MAX_BASE}")));
        }
        let mut allowed = vec![false; base as usize];
        for c in digits {
            if c >= base {
                return Err(Error::InvalidDigits(format!("digit {c} is not below base {base}")));
            }
            allowed[c as usize] = true;
        }
        let digits: Vec<u64> = (0..base).filter(|&c| allowed[c as usize]).collect();
        if digits.is_empty() {
            return Err(Error::InvalidDigits("digit set is empty".into()));
        }
        Ok(DigitSet { base, digits, allowed })
    }

    /// Parses a comma-separated digit list such as `0,2`.
    pub fn parse(base: u64, digits: &str) -> Result<Self> {
        let parsed = digits
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad digit list {digits:?}"))))
            .collect::<Result<Vec<_>>>()?;
        DigitSet::new(base, parsed)
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    #[inline]
    pub fn contains(&self, c: u64) -> bool {
        self.allowed[c as usize]
    }

    pub(crate) fn allowed(&self) -> &[bool] {
        &self.allowed
    }

    pub fn is_full(&self) -> bool {
        self.digits.len() as u64 == self.base
    }

    pub fn min_digit(&self) -> u64 {
        self.digits[0]
    }

    pub fn max_digit(&self) -> u64 {
        *self.digits.last().unwrap()
    }

    /// Length `m` of the longest run of consecutive missing digits.
    pub fn longest_missing_run(&self) -> u64 {
        let (mut best, mut run) = (0, 0);
        for &ok in &self.allowed {
            run = if ok { 0 } else { run + 1 };
            best = best.max(run);
        }
        best
    }

    fn ratio(&self, num: u64, den: u64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    /// `m / (2b)`, the commonly quoted non-density radius.
    pub fn epsilon_claimed(&self) -> BigRational {
        self.ratio(self.longest_missing_run(), 2 * self.base)
    }

    /// `[min C, max C] = [min D / (b-1), max D / (b-1)]`
    pub fn hull(&self) -> (BigRational, BigRational) {
        let b1 = self.base - 1;
        (self.ratio(self.min_digit(), b1), self.ratio(self.max_digit(), b1))
    }

    /// Gap lengths of `[0, 1] \ C` at the first level: left end, right end
    /// and the widest gap between neighbouring first-digit blocks. Deeper
    /// gaps are scaled copies of these.
    fn gaps(&self) -> (BigRational, BigRational, BigRational) {
        let (lo, hi) = self.hull();
        let left = lo.clone();
        let right = BigRational::one() - &hi;
        let width = (&hi - &lo) / BigInt::from(self.base);
        let mut interior = BigRational::zero();
        for w in self.digits.windows(2) {
            let gap = self.ratio(w[1] - w[0], self.base) - &width;
            if gap > interior {
                interior = gap;
            }
        }
        (left, right, interior)
    }

    /// Exact `sup_{x in [0,1)} dist(x, C(b, D))`. Zero for the full digit set.
    pub fn sup_distance(&self) -> BigRational {
        let (left, right, interior) = self.gaps();
        left.max(right).max(interior / BigInt::from(2))
    }

    /// Length of the widest gap of `[0, 1] \ C`, end gaps included.
    pub fn largest_gap(&self) -> BigRational {
        let (left, right, interior) = self.gaps();
        left.max(right).max(interior)
    }

    /// Largest epsilon for which an orbit whose gaps are all below `2 epsilon`
    /// cannot fit inside `C`: half the widest gap. Equals
    /// [`sup_distance`](Self::sup_distance) unless an end gap dominates.
    pub fn certificate_epsilon(&self) -> Result<BigRational> {
        if self.is_full() {
            return Err(Error::FullDigitSet);
        }
        Ok(self.largest_gap() / BigInt::from(2))
    }

    pub fn summary(&self) -> DigitSetSummary {
        let claimed = self.epsilon_claimed();
        let exact = self.sup_distance();
        DigitSetSummary {
            base: self.base,
            digits: self.digits.clone(),
            m: self.longest_missing_run(),
            claimed_differs: claimed != exact,
            epsilon_claimed: claimed,
            epsilon_exact: exact,
            epsilon_certificate: self.largest_gap() / BigInt::from(2),
        }
    }
}

impl fmt::Display for DigitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.digits.iter().map(|c| c.to_string()).collect();
        write!(f, "C({}, {{{}}})", self.base, ds.join(","))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DigitSetSummary {
    pub base: u64,
    pub digits: Vec<u64>,
    pub m: u64,
    #[serde(serialize_with = "as_string")]
    pub epsilon_claimed: BigRational,
    #[serde(serialize_with = "as_string")]
    pub epsilon_exact: BigRational,
    #[serde(serialize_with = "as_string")]
    pub epsilon_certificate: BigRational,
    pub claimed_differs: bool,
}
