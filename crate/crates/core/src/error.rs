use thiserror::Error;

/// Errors shared across the whole crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension {0} outside supported range 1..=8")]
    DimensionOutOfRange(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} must be at least 2")]
    BadModulus(u64),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("not idempotent: {0}")]
    NotIdempotent(String),
    #[error("invalid scalar literal {0:?}")]
    BadScalar(String),
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("operation requires field coefficients, got {0}")]
    FieldRequired(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}
