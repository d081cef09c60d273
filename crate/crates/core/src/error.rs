use thiserror::Error;

/// Errors raised while building or combining polynomials and ideals.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("{0} is not an admissible prime modulus")]
    InvalidPrime(u64),

    #[error("coefficient fields differ")]
    FieldMismatch,

    #[error("variable count mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("monomial orders differ")]
    OrderMismatch,

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),

    #[error("line {line}: {message}")]
    IdealFile { line: usize, message: String },
}
