use thiserror::Error;

/// Errors raised by the evaluators.
///
/// Slow convergence is not an error: it is reported through
/// [`SeriesResult::converged`](crate::SeriesResult::converged).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An intermediate product left the finite range of `f64`.
    #[error("magnitude overflow in {what} at index {index}")]
    Overflow { what: &'static str, index: usize },

    /// Derivative order above the supported maximum.
    #[error("unsupported derivative order {order} (maximum is {max})")]
    UnsupportedOrder { order: usize, max: usize },

    /// An [`EvalConfig`](crate::EvalConfig) field violates its invariants.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
