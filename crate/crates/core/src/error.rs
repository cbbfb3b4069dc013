use thiserror::Error;

/// Errors produced by the algebra, system and solver layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: monomial of degree {degree} exceeds declared degree bound {bound}")]
    DegreeViolation {
        line: usize,
        degree: usize,
        bound: usize,
    },

    #[error("line {line}: variable x{index} is out of range for {vars} variables")]
    VariableOutOfRange {
        line: usize,
        index: usize,
        vars: usize,
    },

    #[error("matrix is not invertible over GF(2)")]
    Singular,

    #[error("{n} variables exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("solution verification failed after {0} attempts")]
    InternalRetryExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
