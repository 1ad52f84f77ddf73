//! Error types shared across the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by configuration validation, numerical routines, and I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter violates its documented domain (negative noncentrality,
    /// out-of-range index, spacing below the minimum, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A numerical routine failed to reach its accuracy target (quadrature
    /// refinement exhausted, quantile search not converged, cross-check
    /// disagreement).
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// I/O failure while reading or writing sample dumps.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
