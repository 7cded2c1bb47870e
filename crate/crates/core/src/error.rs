use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A factorial argument went negative or a linear factor went nonpositive.
    #[error("domain error at n = {n}: term {term} evaluates to {value}")]
    Domain { term: String, n: u64, value: i64 },

    #[error("ratio is not an integer: prime {prime} has exponent {exponent}")]
    NotIntegral { prime: u64, exponent: i64 },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("{0}")]
    Range(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A published value could not be reproduced.
    #[error("mismatch: {0}")]
    Mismatch(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn overflow(msg: impl Into<String>) -> Self {
        Error::Overflow(msg.into())
    }
}
