use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("bad prime {prime}: {reason}")]
    BadPrime { prime: u64, reason: String },
    #[error("invalid number field modulus: {0}")]
    InvalidModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no non-residue witness found below {0}")]
    NoWitnessFound(u64),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("bad specialization: {0}")]
    BadSpecialization(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("variable mismatch at offset {offset}: expected {expected}, found {found}")]
    VariableMismatch {
        offset: usize,
        expected: char,
        found: char,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
