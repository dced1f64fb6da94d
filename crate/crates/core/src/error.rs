use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A quadrature ran out of budget before meeting its tolerance.
    #[error(
        "convergence error: {what} (estimate {value:e}, error {error:e}, target {target:e}, {evaluations} evaluations)"
    )]
    Convergence {
        what: String,
        value: f64,
        error: f64,
        target: f64,
        evaluations: usize,
    },

    /// A tail bound could not be driven below the requested remainder,
    /// or the integrand was found above its declared bound.
    #[error("tail bound error: {0}")]
    TailBound(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
