use thiserror::Error;

/// Errors surfaced by the core library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not a canonical field element")]
    NotCanonical,
    #[error("evaluation domain error: {0}")]
    Domain(String),
    #[error("invalid state: {0}")]
    State(&'static str),
    #[error("constraint references an unallocated wire")]
    Wire,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("assignment does not satisfy the constraint system")]
    NotSatisfied,
    #[error("exceptional point addition (equal or opposite operands)")]
    ExceptionalPoint,
    #[error("point is not in the expected prime-order subgroup")]
    Subgroup,
    #[error("circuit mismatch: {0}")]
    CircuitMismatch(String),
    #[error("claimed key does not match the address")]
    KeyMismatch,
    #[error("parse error at byte {offset}: {what}")]
    Parse { offset: usize, what: String },
}

impl Error {
    pub fn parse(offset: usize, what: impl Into<String>) -> Self {
        Error::Parse { offset, what: what.into() }
    }
}
