use num_complex::Complex64;
use thiserror::Error;

/// Failures reported by the library. Each variant maps to one CLI exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("arg z = {arg} lies outside the sector {sector}")]
    Sector { arg: f64, sector: &'static str },
    #[error("no applicable error bound: {0}")]
    NoApplicableBound(String),
    /// A numerical procedure stopped before reaching its tolerance; the
    /// partial estimate is kept so callers can still inspect it.
    #[error("accuracy target missed (estimate {estimate}, error estimate {error_estimate:e})")]
    Accuracy {
        estimate: Complex64,
        error_estimate: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
