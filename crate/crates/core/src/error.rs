use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("{quantity} = {value:e} is outside the domain: {reason}")]
    Domain {
        quantity: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("a perfect conductor has no finite permittivity; use its reflection coefficients")]
    UnsupportedModel,

    #[error("permittivity is singular at omega = {omega:e} rad/s")]
    Singularity { omega: f64 },

    #[error(
        "integration did not converge: value {value:e}, error estimate {abs_error:e} after {evaluations} evaluations"
    )]
    IntegrationFailure {
        value: f64,
        abs_error: f64,
        evaluations: usize,
    },

    #[error("undefined: {0}")]
    Undefined(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
