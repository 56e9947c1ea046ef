//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A context does not support the requested operation (e.g. Følner
    /// windows for free words).
    #[error("configuration error: {0}")]
    Config(String),

    /// A caller-supplied argument violates a precondition.
    #[error("argument error: {0}")]
    Argument(String),

    /// Parameters fail the structural requirements of a construction
    /// (coprimality, convergence bounds, ...).
    #[error("construction error: {0}")]
    Construction(String),

    /// A query exceeds the precision budget of a fixed-point approximation.
    #[error("precision error: {0}")]
    Precision(String),

    /// An iterative numeric procedure failed to converge.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// A search budget was exceeded where the operation cannot degrade
    /// gracefully.
    #[error("budget error: {0}")]
    Budget(String),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
    pub fn construction(msg: impl Into<String>) -> Self {
        Error::Construction(msg.into())
    }
    pub fn precision(msg: impl Into<String>) -> Self {
        Error::Precision(msg.into())
    }
    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }
}
