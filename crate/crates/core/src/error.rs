use thiserror::Error;

/// Errors raised by constructors, checkers and products.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input; `field` points at the offending piece of data.
    #[error("invalid input at `{field}`: {message}")]
    Input { field: String, message: String },

    /// Scalars of different kinds (or moduli) were combined.
    #[error("scalar kind mismatch: {0}")]
    KindMismatch(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("inconsistent linear system")]
    Inconsistent,

    /// An axiom or identity check failed; `witness` describes the violating tuple.
    #[error("{check} failed: {witness}")]
    CheckFailed { check: String, witness: String },

    /// A computation that cannot fail on valid data did fail.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Input {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn check(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::CheckFailed {
            check: check.into(),
            witness: witness.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
