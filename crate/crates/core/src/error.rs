use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates its documented domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An argument falls outside the domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested computation exceeds a configured budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// The requested model variant cannot be simulated.
    #[error("unsupported specification: {0}")]
    Unsupported(String),

    /// A counting job ran past its deadline.
    #[error("timed out after {0:.1} s")]
    Timeout(f64),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
