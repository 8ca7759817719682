use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain on which the routine is defined.
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// `csch` evaluated at one of its poles `z = ikπ`.
    #[error("csch has a pole at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    /// An iterative routine did not reach its tolerance.
    #[error("{routine} did not converge: {detail}")]
    Convergence { routine: &'static str, detail: String },

    /// A result is not representable as a finite `f64`.
    #[error("{what} overflows the floating-point range")]
    Overflow { what: &'static str },

    /// A sample is empty or holds a value that is not a positive finite real.
    #[error("invalid sample: {0}")]
    InvalidSample(String),

    /// A scenario was passed to a routine for a different grid geometry.
    #[error("scenario mismatch: {0}")]
    Scenario(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, domain: &'static str) -> Error {
    Error::Domain { what, value, domain }
}
