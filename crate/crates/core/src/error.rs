use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// An operation was applied outside its domain (e.g. preimage of a non-member).
    #[error("domain error: {0}")]
    Domain(String),
    /// A computation would exceed a configured size ceiling.
    #[error("resource limit exceeded at k={k}: support {support} exceeds ceiling {limit}")]
    Resource { k: usize, support: usize, limit: usize },
    /// A matrix is too large for the requested method.
    #[error("resource limit exceeded: dimension {dim} exceeds {limit} for this method; use {alternative}")]
    DimensionLimit { dim: usize, limit: usize, alternative: &'static str },
    /// An internal consistency check failed; this indicates a bug.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
