use thiserror::Error;

/// Errors raised by the physics and numerics layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// A closed-form approximation was requested outside its validity regime.
    #[error("regime error in {op}: {reason}")]
    Regime { op: &'static str, reason: String },

    /// A numerical procedure failed to converge or produced a non-finite value.
    #[error("numeric error in {op}: {reason}")]
    Numeric { op: &'static str, reason: String },

    /// The operation is not defined for this input kind.
    #[error("unsupported operation {op}: {reason}")]
    Unsupported { op: &'static str, reason: String },

    /// Two quantities with different dimensions were combined additively.
    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: String, right: String },
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain { op, reason: reason.into() }
    }

    pub(crate) fn regime(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Regime { op, reason: reason.into() }
    }

    pub(crate) fn numeric(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Numeric { op, reason: reason.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
