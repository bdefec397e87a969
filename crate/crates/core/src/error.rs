use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch between operands")]
    GridMismatch,

    #[error("expected {expected} representation, found {found}")]
    RepresentationMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("state leaks outside the domain: edge mass fraction {edge_mass:e} exceeds {limit:e}")]
    BoundaryLeak { edge_mass: f64, limit: f64 },

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported Hamiltonian for {operation}: {reason}")]
    UnsupportedHamiltonian {
        operation: &'static str,
        reason: String,
    },

    #[error("monomial degree {degree} exceeds the configured limit {limit}")]
    DegreeLimit { degree: u32, limit: u32 },

    #[error("spectral amplification guard tripped: p^{power} on k_max = {k_max:e}")]
    SpectralOverflow { power: u32, k_max: f64 },

    #[error("truncation error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    Truncation { estimate: f64, tolerance: f64 },

    #[error("kernel is singular at this time: {0}")]
    SingularKernel(String),

    #[error("{0}")]
    Numerical(String),
}

impl Error {
    pub fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
