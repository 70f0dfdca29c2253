//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by kernel, function-space, norm, operator, and rate APIs.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A numeric parameter is outside its admissible range.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A derivative order beyond the function's certified capability was requested.
    #[error("derivative order {requested} exceeds certified order {certified} of {function}")]
    DerivativeOrder {
        function: &'static str,
        requested: usize,
        certified: usize,
    },

    /// An operation expected a periodic (or line) function and got the other kind.
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    /// A rate fit could not proceed because of nonpositive error values.
    #[error("degenerate fit: nonpositive errors at scale indices {indices:?}")]
    DegenerateFit { indices: Vec<usize> },

    /// An experiment configuration is internally inconsistent.
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    /// A configuration whose theoretical rate the underlying theory does not state.
    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
