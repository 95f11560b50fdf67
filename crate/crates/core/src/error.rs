use thiserror::Error;

/// Errors produced by state construction, transforms and tomogram evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("near-singular kernel: {what} = {value:e} is below the guard {guard:e}")]
    NearSingular {
        what: &'static str,
        value: f64,
        guard: f64,
    },

    #[error("normalization defect {defect:e} exceeds tolerance {tol:e}")]
    Normalization { defect: f64, tol: f64 },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("grid does not cover the distribution: tail mass {tail_mass:e} outside the window")]
    Coverage { tail_mass: f64 },

    #[error("density value {value:e} is below the round-off clamp")]
    NegativeDensity { value: f64 },

    #[error("required lattice of {points} points exceeds the limit of {limit}")]
    LatticeTooLarge { points: usize, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("no registered tomogram method can evaluate {0}")]
    NoMethod(String),
}

impl Error {
    /// Short machine-readable category, stable across releases.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Dimension { .. } => "dimension",
            Error::NearSingular { .. } => "near_singular",
            Error::Normalization { .. } => "normalization",
            Error::InvariantViolation(_) => "invariant",
            Error::Coverage { .. } => "coverage",
            Error::NegativeDensity { .. } => "negative_density",
            Error::LatticeTooLarge { .. } => "lattice_too_large",
            Error::Parse(_) => "parse",
            Error::NoMethod(_) => "no_method",
        }
    }

    /// True for errors caused by user input rather than numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_) | Error::Dimension { .. } | Error::Parse(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
