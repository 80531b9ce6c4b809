use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("digit index {index} out of range for a digit set of size {size}")]
    Address { index: usize, size: usize },

    #[error("resource budget exceeded: need {needed}, budget {budget}")]
    Resource { needed: u128, budget: u128 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A certificate or cross-check failed its own consistency test.
    #[error("inconsistent result: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Address { .. } => "address",
            Error::Resource { .. } => "resource",
            Error::Domain(_) => "domain",
            Error::Parse(_) => "parse",
            Error::Inconsistent(_) => "inconsistent",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
