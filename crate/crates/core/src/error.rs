use thiserror::Error;

/// Errors raised by the evaluation, symbolic and quadrature routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singularity: {0}")]
    Singularity(String),

    /// Symbolic routines need the angle as an exact rational multiple of pi.
    #[error("symbolic evaluation needs a rational multiple of pi, got the real value {0}")]
    NotRationalPi(f64),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("integrand returned a non-finite value at x = {0}")]
    NonFiniteSample(f64),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
