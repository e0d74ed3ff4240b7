use thiserror::Error;

/// Everything that can go wrong outside of a mathematical verdict.
///
/// Axiom failures are never errors: they are reported as failed items in a
/// [`Report`](crate::report::Report). Errors are reserved for malformed input,
/// unmet preconditions and structure that cannot be induced on a quotient.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("ill-defined on quotient: {0}")]
    IllDefined(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn ill_defined(msg: impl Into<String>) -> Self {
        Error::IllDefined(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
