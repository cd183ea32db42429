use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u32),
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands live over different primes ({0} and {1})")]
    PrimeMismatch(u32, u32),
    #[error("vector is not in the span of the basis: {0}")]
    NotInSpan(String),
    #[error("interval set is not admissible: {0}")]
    Inadmissible(String),
    #[error("malformed token {0:?}")]
    InvalidToken(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("{0}")]
    Precondition(String),
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
