use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Variants are grouped so the command-line front end can map them to exit
/// codes: [`Error::is_config_error`] covers malformed input, everything
/// numerical is reported separately.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} is not supported here (need {1})")]
    UnsupportedDimension(usize, &'static str),

    #[error("invalid harmonic index (l={l}, m={m}) for dimension {dim}")]
    InvalidIndex { l: u32, m: i32, dim: usize },

    #[error("angle out of range: {0}")]
    InvalidAngle(String),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("coefficients do not represent a real-valued function: {0}")]
    RealityViolation(String),

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("radius {r} is outside the radial range [{lo}, {hi}]")]
    RadiusOutOfRange { r: f64, lo: f64, hi: f64 },

    #[error("invalid MPS configuration: {0}")]
    InvalidConfig(String),

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("perturbed boundary is invalid: {0}")]
    InvalidBoundary(String),

    #[error("rank collapse: {0}")]
    RankCollapse(String),

    #[error("solver failure at t = {t}: {source}")]
    AtParameter {
        t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("branch window conflict: {0}")]
    WindowConflict(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True when the error is caused by malformed user input rather than by
    /// the numerics.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::UnsupportedDimension(..)
                | Error::InvalidIndex { .. }
                | Error::InvalidAngle(_)
                | Error::InvalidDomain(_)
                | Error::RealityViolation(_)
                | Error::BasisMismatch(_)
                | Error::InvalidConfig(_)
                | Error::Config { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
