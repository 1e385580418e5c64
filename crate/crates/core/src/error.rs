use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error in {function}: {reason} (got {value})")]
    Domain {
        function: &'static str,
        reason: &'static str,
        value: f64,
    },

    /// The result is not representable as a finite double.
    #[error("range error in {function}: result overflows at ({re}, {im})")]
    Range {
        function: &'static str,
        re: f64,
        im: f64,
    },

    /// Invalid distribution or channel parameters.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Scale c = 0 collapses the law to a point mass.
    #[error("degenerate distribution: scale is zero (point mass)")]
    Degenerate,

    /// A numerical integration did not reach its tolerance.
    #[error(
        "{method} did not converge at x = {x}: estimate {estimate:e}, \
         error estimate {error_estimate:e} after {evaluations} evaluations"
    )]
    NonConvergence {
        method: &'static str,
        x: f64,
        estimate: f64,
        error_estimate: f64,
        evaluations: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(function: &'static str, reason: &'static str, value: f64) -> Error {
    Error::Domain {
        function,
        reason,
        value,
    }
}
