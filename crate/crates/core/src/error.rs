use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The argument hits (or its ball overlaps) a pole at the given integer.
    #[error("pole at {nearest}")]
    Pole { nearest: i64 },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("no convergence: {0}")]
    Convergence(String),

    /// Rational recognition could not single out one candidate.
    #[error("ambiguous recognition: {0}")]
    Ambiguity(String),

    #[error("numerical degeneracy: {0}")]
    Degenerate(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
