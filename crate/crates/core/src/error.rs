use thiserror::Error;

use crate::format::ParseError;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} criteria, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid structure: {0}")]
    Structure(String),

    #[error("{what}: n = {n} exceeds the configured cap of {cap}")]
    Capacity {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("backend error: {0}")]
    Backend(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn dimension(expected: usize, got: usize) -> Self {
        Error::Dimension { expected, got }
    }
}
