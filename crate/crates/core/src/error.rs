use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("target degree {target} is below the polynomial degree {degree}")]
    DegreeTooLow { target: u32, degree: u32 },

    #[error("polynomial is not identically 1 on the hyperplane (remainder {0})")]
    NotOneOnHyperplane(String),

    #[error("wrong system kind: {0}")]
    WrongSystemKind(String),

    #[error("term {0} is absent or its coefficient is too small")]
    MissingTerm(String),

    #[error("search budget exhausted: {0}")]
    BudgetExceeded(String),

    #[error("malformed input at `{field}`: {message}")]
    Format { field: String, message: String },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn format(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Format {
            field: field.into(),
            message: message.into(),
        }
    }
}
