use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("eigendecomposition did not converge")]
    DecompositionFailed,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("state is rank deficient (smallest eigenvalue {min_eigenvalue:.3e})")]
    RankDeficient { min_eigenvalue: f64 },

    #[error("map is not sub-unital (largest eigenvalue of N(1) - 1 is {excess:.3e})")]
    NotSubUnital { excess: f64 },

    #[error("map is not unital (|N(1) - 1| = {defect:.3e})")]
    NotUnital { defect: f64 },

    #[error("generator is not self-adjoint (|L - L^dag| = {defect:.3e})")]
    NotSelfAdjoint { defect: f64 },

    #[error("integration failed at t = {t}: minimum eigenvalue {min_eigenvalue:.3e}")]
    IntegrationFailure { t: f64, min_eigenvalue: f64 },

    #[error("truncation tail mass {mass:.3e} exceeds bound {bound:.1e} at t = {t}")]
    TailMassBreach { t: f64, mass: f64, bound: f64 },

    #[error("{what} did not converge: {detail}")]
    NonConvergence { what: &'static str, detail: String },

    #[error("unsupported function: {0}")]
    UnsupportedFunction(String),

    #[error("index {index} has no neighbours on a grid of {len} points")]
    BoundaryIndex { index: usize, len: usize },

    #[error("state sampler produced no states")]
    EmptySampler,

    #[error("serialization: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_mismatch(expected: impl ToString, found: impl ToString) -> Error {
    Error::DimensionMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
