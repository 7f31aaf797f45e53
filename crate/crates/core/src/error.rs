use thiserror::Error;

/// Errors raised by constructions and decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource limit: {what} exceeds budget {budget}")]
    ResourceLimit { what: String, budget: usize },

    /// The quantity is undefined for this input (e.g. the diameter of a
    /// disconnected graph).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn limit(what: impl Into<String>, budget: usize) -> Self {
        Error::ResourceLimit {
            what: what.into(),
            budget,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
