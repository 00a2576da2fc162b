use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller violated an operation precondition.
    #[error("argument error: {0}")]
    Argument(String),
    /// A modular specialization hit a vanishing denominator. Retry at a fresh point.
    #[error("bad evaluation point: {0}")]
    BadPoint(String),
    /// The window cannot hold the objects the computation needs.
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
