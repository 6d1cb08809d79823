use thiserror::Error;

/// Errors produced by constructions, analyses and estimators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violates a documented constraint.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Finite projective planes are only built over prime orders.
    #[error("unsupported projective plane order {0}: only prime orders are supported")]
    UnsupportedOrder(u64),

    /// A computation would exceed a configured size limit.
    #[error("size error: {what} is {actual}, limit is {limit}")]
    Size {
        what: String,
        actual: u128,
        limit: u128,
    },

    /// A bound or formula is used outside the regime where it holds.
    #[error("applicability error: {0}")]
    Applicability(String),

    #[error("numerical error: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn size(what: impl Into<String>, actual: u128, limit: u128) -> Self {
        Error::Size {
            what: what.into(),
            actual,
            limit,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
