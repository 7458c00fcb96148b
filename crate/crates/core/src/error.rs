use thiserror::Error;

use crate::poly::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input data (mixed fields, duplicate points, wrong lengths).
    #[error("invalid data: {0}")]
    Data(String),
    /// Input outside the domain of an operation (odd degree, zero word, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A hard enumeration cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    /// The prime divides a denominator of the matrix; pick another prime.
    #[error("prime {0} divides a denominator, retry with another prime")]
    BadPrime(u64),
    #[error("inconsistent values: {0}")]
    Inconsistent(String),
    #[error("denominator vanishes at the origin, no power series expansion")]
    PoleAtOrigin,
    #[error("series coefficient at t^{0} is not an integer")]
    NonIntegral(usize),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
