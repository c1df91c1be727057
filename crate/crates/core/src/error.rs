use thiserror::Error;

use crate::indices::Index;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index must have at least one part")]
    EmptyIndex,

    #[error("index parts must be positive, got {0:?}")]
    ZeroPart(Vec<u32>),

    #[error("index ({0}) is not admissible: last part must be at least 2")]
    NotAdmissible(Index),

    #[error("empty domain: {0}")]
    EmptyDomain(String),

    #[error("malformed word: {0}")]
    MalformedWord(String),

    #[error("block/pattern shape mismatch: {0}")]
    Shape(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("parameter arity mismatch: expected {expected}, got mu={mu} xi={xi}")]
    Arity {
        expected: usize,
        mu: usize,
        xi: usize,
    },

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("requested tolerance is below the supported floor of 2^-{floor_bits}")]
    ToleranceTooSmall { floor_bits: u32 },

    #[error("cache I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
