use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to be
/// shown to a user unchanged.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degree overflow: grade {grade} exceeds bound {bound}")]
    DegreeOverflow { grade: u32, bound: u32 },

    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    Budget { what: String, needed: u128, budget: u128 },

    #[error("missing Pontryagin numbers: {0}")]
    MissingPontryagin(String),

    #[error("curvature operator is not in the Bianchi kernel")]
    NotBianchi,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
