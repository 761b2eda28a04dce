//! Exact fractions in `[0, 1]` and rational parsing.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced fraction `num/den` with `0 <= num <= den`.
///
/// Equality and ordering are by value, which coincides with field equality
/// because the representation is canonical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReducedFraction {
    num: u64,
    den: u64,
}

impl ReducedFraction {
    /// Reduces `num/den`; rejects `den = 0` and values above 1.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::OutOfDomain(format!("{num}/0 has a zero denominator")));
        }
        if num > den {
            return Err(Error::OutOfDomain(format!("{num}/{den} is greater than 1")));
        }
        let g = num.gcd(&den);
        Ok(ReducedFraction { num: num / g, den: den / g })
    }

    /// Caller guarantees `gcd(num, den) = 1` and `num <= den`.
    pub(crate) fn new_unchecked(num: u64, den: u64) -> Self {
        debug_assert!(den > 0 && num <= den && num.gcd(&den) == 1, "{num}/{den}");
        ReducedFraction { num, den }
    }

    pub const ZERO: ReducedFraction = ReducedFraction { num: 0, den: 1 };
    pub const ONE: ReducedFraction = ReducedFraction { num: 1, den: 1 };

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// True for 0 and 1, the endpoints of the unit interval.
    pub fn is_endpoint(&self) -> bool {
        self.den == 1
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }
}

impl Ord for ReducedFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for ReducedFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ReducedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for ReducedFraction {
    type Err = Error;

    /// Accepts `a/d` (reduced on the way in) or a bare `0` / `1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (a, d) = match s.split_once('/') {
            Some((a, d)) => (a.trim(), d.trim()),
            None => (s, "1"),
        };
        let parse = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("expected a fraction a/d of non-negative integers, got {s:?}")))
        };
        ReducedFraction::new(parse(a)?, parse(d)?)
    }
}

impl Serialize for ReducedFraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses an exact rational `p/q` or an integer. Decimal points and
/// exponents are rejected so that no binary rounding can creep in.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected a rational p/q, got {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Requires a strictly positive rational.
pub fn positive_epsilon(eps: &BigRational) -> Result<()> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveEpsilon(eps.to_string()))
    }
}

/// Serializes any `Display` value as a JSON string.
pub(crate) fn as_string<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}
