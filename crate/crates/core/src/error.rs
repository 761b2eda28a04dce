use thiserror::Error;

/// Failures raised by the library. Everything except [`Error::Invariant`] is a
/// violated precondition on the caller's input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p-adic valuation of zero is undefined")]
    ZeroValuation,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} has no prime divisor")]
    NoPrimeDivisor(u64),
    #[error("gcd({base}, {modulus}) > 1, multiplicative order is undefined")]
    NotCoprime { base: u64, modulus: u64 },
    #[error("{base}^E is not 1 mod {modulus}, so E is not a multiple of the group exponent")]
    NotAnExponent { base: u64, modulus: u64 },
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u64),
    #[error("prime set S must be non-empty")]
    EmptyPrimeSet,
    #[error("prime {prime} divides the base {base}")]
    PrimeDividesBase { prime: u64, base: u64 },
    #[error("prime {prime} of the denominator is not in S")]
    PrimeOutsideSet { prime: u64 },
    #[error("denominator {den} shares a factor with the base {base}")]
    DenominatorNotCoprime { den: u64, base: u64 },
    #[error("value out of domain: {0}")]
    OutOfDomain(String),
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(String),
    #[error("epsilon {epsilon} exceeds the certified bound {bound}")]
    EpsilonTooLarge { epsilon: String, bound: String },
    #[error("the full digit set has no gap, epsilon would be 0")]
    FullDigitSet,
    #[error("invalid digit set: {0}")]
    InvalidDigits(String),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
    #[error("i/o: {0}")]
    Io(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code: 3 for broken invariants, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
