use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation
    /// (|m| > j, zero-norm factor, non-PSD density matrix, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The arguments are individually valid but do not fit together
    /// (wrong basis, mismatched spins, wrong vector length).
    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
