use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size limit exceeded: {what} (limit {limit})")]
    Size { what: String, limit: u64 },

    #[error("index {index} out of range 1..={max}")]
    Index { index: u64, max: u64 },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("pole at {at}, residue {residue}")]
    Pole { at: Complex64, residue: Complex64 },

    #[error("{what} did not converge (last two iterates {previous:e}, {last:e})")]
    Convergence {
        what: String,
        previous: f64,
        last: f64,
    },

    #[error("ill-conditioned evaluation: {0}")]
    Conditioning(String),

    #[error("malformed sieve cache: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn size(what: impl Into<String>, limit: u64) -> Self {
        Error::Size {
            what: what.into(),
            limit,
        }
    }
}
