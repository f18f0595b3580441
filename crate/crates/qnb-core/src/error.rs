use thiserror::Error;

/// Errors produced by the noise-budget library.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("frequency {omega} outside tabulated range [{min}, {max}]")]
    OutOfRange { omega: f64, min: f64, max: f64 },

    #[error("singular susceptibility at omega = {omega}: {reason}")]
    Singularity { omega: f64, reason: String },

    #[error("quadrature spectra violate the Heisenberg inequality at omega = {omega} (margin {margin:.3e})")]
    Infeasible { omega: f64, margin: f64 },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature failed to converge: achieved relative tolerance {achieved:.3e} (requested {requested:.3e}) after {evaluations} evaluations")]
    QuadratureNonConvergent {
        achieved: f64,
        requested: f64,
        evaluations: usize,
    },

    #[error("divergent band integral: {0}")]
    DivergentIntegral(String),

    #[error("internal consistency violation: {0}")]
    Inconsistent(String),

    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// Exit code convention: 2 for configuration problems, 3 for numerical ones.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::InvalidParameter { .. } => 2,
            _ => 3,
        }
    }
}
