use crate::graph::Kind;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("graph kind mismatch: expected {expected:?}, got {got:?}")]
    KindMismatch { expected: Kind, got: Kind },

    #[error("vertex count {n} exceeds the supported maximum {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("enumeration budget exceeded for {kind:?} on {n} vertices{hint}")]
    BudgetExceeded {
        kind: Kind,
        n: usize,
        hint: &'static str,
    },

    #[error("invalid {format} input: {reason}")]
    InvalidFormat {
        format: &'static str,
        reason: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("class order violation: {0}")]
    OrderViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
