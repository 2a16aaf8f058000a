use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: unknown vertex, bad dimensions, unparsable number.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A documented precondition of the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The requested value exists only under hypotheses that do not hold.
    #[error("not asserted: {0}")]
    NotAsserted(String),
    /// Facet enumeration would exceed the configured cap.
    #[error("facet enumeration cap exceeded: dimension {dim}, {dirs} directions (cap {max_dim}, {max_dirs})")]
    CapExceeded {
        dim: usize,
        dirs: usize,
        max_dim: usize,
        max_dirs: usize,
    },
    /// An internal consistency check failed.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
