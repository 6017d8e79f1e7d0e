use num_complex::Complex64;
use thiserror::Error;

/// Failure modes of the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("argument outside the method's domain: {0}")]
    Domain(String),
    /// A series or quadrature did not reach its target; carries the best
    /// value found so far.
    #[error("evaluation failed: {message} (partial value {partial}, error estimate {estimate:e})")]
    Evaluation {
        message: String,
        partial: Complex64,
        estimate: f64,
    },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
