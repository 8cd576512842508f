use thiserror::Error;

/// Errors shared across the walk, search, and attack engines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A linear solve hit a pivot below tolerance. For walk systems this
    /// signals a chain that is not absorbing rather than a rounding issue.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// The chain admits more than one stationary distribution (one per
    /// closed recurrent class), so no unique limit exists.
    #[error("stationary distribution is not unique ({nclasses} closed classes)")]
    NonUniqueStationary { nclasses: usize },

    #[error("step budget exhausted after {taken} steps (window allows {budget})")]
    BudgetExceeded { taken: usize, budget: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
