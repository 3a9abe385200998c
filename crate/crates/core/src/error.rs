use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation. The message
    /// names the violated invariant.
    #[error("{0}")]
    Domain(String),

    /// The Lerch series would need more terms than the configured cap.
    #[error("lerch series needs more than {cap} terms (z = {z})")]
    TermCap { z: f64, cap: usize },

    /// Quadrature or eps-extrapolation failed to settle within budget.
    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// A postcondition residual check failed.
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
