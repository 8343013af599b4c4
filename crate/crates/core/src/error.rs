//! Error types shared across the library.

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the numeric routines and experiment runners.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An input fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative solver ran out of iterations. Carries the last iterate
    /// and the residual at that iterate so callers can decide whether the
    /// partial answer is still usable.
    #[error("no convergence after {iterations} iterations (last iterate {last:e}, residual {residual:e})")]
    Convergence {
        iterations: u32,
        last: f64,
        residual: f64,
    },

    /// Parameter validation failed. Every violation is listed, not just the
    /// first one found.
    #[error("invalid parameters: {}", .0.join("; "))]
    Validation(Vec<String>),

    /// An objective returned a non-finite value during grid evaluation.
    #[error("objective evaluated to a non-finite value at x = {at:e}")]
    Evaluation { at: f64 },

    /// A sweep aborted because an optimizer failed at one axis value.
    #[error("sweep aborted at {axis} = {value}: {source}")]
    Sweep {
        axis: &'static str,
        value: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
