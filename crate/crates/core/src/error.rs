use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A computation was refused because it exceeds a configured resource guard.
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    /// A numeric solver failed to converge or to bracket a root.
    #[error("solver failure: {0}")]
    Solver(String),
    /// An internal consistency check failed (indicates a bug).
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
