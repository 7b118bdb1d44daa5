use thiserror::Error;

/// Errors raised by code construction, enumeration and design checks.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("p = {0} is not congruent to +-1 mod 8")]
    NotQrPrime(u64),
    #[error("p = {0} is not congruent to 1 mod 8")]
    NotDesignPrime(u64),
    #[error(
        "multiplicative order of 2 mod {p} is {m}, larger than the supported extension degree 63"
    )]
    ExtensionTooLarge { p: u64, m: u32 },
    #[error("no irreducible polynomial of degree {0} found")]
    NoIrreducible(u32),
    #[error("generator polynomial does not divide x^{0} - 1")]
    NotCyclicGenerator(usize),
    #[error("enumeration refused: dimension k = {required} exceeds budget {budget}")]
    BudgetExceeded { required: usize, budget: usize },
    #[error("exhaustive scan refused: {work} word operations exceed limit {limit}")]
    ScanTooLarge { work: u128, limit: u128 },
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("code length {0} exceeds the 128 coordinates supported by enumeration")]
    TooLong(usize),
    #[error("unknown coordinate label {0}")]
    UnknownLabel(String),
    #[error("labels are not distinct")]
    RepeatedLabel,
    #[error("invalid permutation of {0} points")]
    BadPermutation(usize),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
