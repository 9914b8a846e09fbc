use thiserror::Error;

/// Errors raised by the distribution, sampling and fitting routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum BasnError {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid or degenerate data handed to an estimator.
    #[error("estimation error: {0}")]
    Estimation(String),

    /// The optimizer or root finder did not reach its tolerance.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// A matrix expected to be positive definite was not.
    #[error("matrix is not positive definite (min eigenvalue {min_eigenvalue:e}, condition {condition:e})")]
    NotPositiveDefinite { min_eigenvalue: f64, condition: f64 },

    /// Malformed input data (CSV ingestion).
    #[error("data error: {0}")]
    Data(String),
}

impl BasnError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        BasnError::Domain(msg.into())
    }

    pub(crate) fn estimation(msg: impl Into<String>) -> Self {
        BasnError::Estimation(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, BasnError>;
