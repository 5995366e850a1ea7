use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A series or quadrature did not reach the requested tolerance.
    /// `partial` carries the best value obtained so far.
    #[error("convergence failure in {context}: {detail}")]
    Convergence {
        context: &'static str,
        detail: String,
        partial: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// A mathematical identity or positivity claim failed numerically.
    /// This is reported, never silently clipped; it is the falsification
    /// signal the CLI maps to exit code 3.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub fn convergence(context: &'static str, detail: impl Into<String>, partial: f64) -> Self {
        Error::Convergence {
            context,
            detail: detail.into(),
            partial,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
