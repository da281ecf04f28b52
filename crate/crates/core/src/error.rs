use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Invalid parameters or inputs (bad field order, length mismatch, ...).
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A brute-force enumeration would exceed its configured cap.
    #[error("exhaustion refused: {what} needs {needed} items, limit is {limit}")]
    ExhaustionRefused { what: &'static str, needed: String, limit: u64 },

    /// A chain of codes is not nested.
    #[error("nesting violation at level {level}: {detail}")]
    Nesting { level: usize, detail: String },

    /// A vector was expected to lie in a code and does not.
    #[error("vector is not a codeword of {0}")]
    NotInCode(&'static str),

    /// An internal consistency check failed.
    #[error("internal defect: {0}")]
    Defect(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn defect(msg: impl Into<String>) -> Self {
        Error::Defect(msg.into())
    }
}
