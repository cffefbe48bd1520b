//! Error taxonomy shared by the whole crate.

use thiserror::Error;

/// Errors produced by the pricing library.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation (NaN, ±∞ where
    /// a finite value is required).
    #[error("domain error: {message}")]
    Domain { message: String },

    /// Result not representable in the scalar type (overflow of an exp term).
    #[error("range error: {message}")]
    Range { message: String },

    /// Structurally invalid argument (empty axis, a ≥ b, paths below minimum).
    #[error("invalid input: {message}")]
    InvalidInput { message: String },

    /// Truncation interval carries essentially no probability mass.
    #[error("singular truncation: {message}")]
    SingularTruncation { message: String },

    /// Parameters pushed an intermediate term outside the regime where the
    /// closed form (or its fallback) is trustworthy; names the term.
    #[error("numerical regime failure in term `{term}`: {message}")]
    NumericalRegime { term: String, message: String },

    /// Export I/O failure, with the path for context.
    #[error("i/o failure on `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain {
            message: message.into(),
        }
    }

    pub(crate) fn range(message: impl Into<String>) -> Self {
        Error::Range {
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidInput {
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
