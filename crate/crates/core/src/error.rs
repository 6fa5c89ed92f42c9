use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e} exceeds {bound:.3e})")]
    NotHermitian { asymmetry: f64, bound: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPsd { eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported function: {0}")]
    UnsupportedFunction(String),

    #[error("value at t = {t} is not in the range of the trace density")]
    RangeViolation { t: f64 },

    #[error("polynomial degree {degree} exceeds the cap of {cap}")]
    DegreeOverflow { degree: usize, cap: usize },

    #[error("L2(M) is the trivial space (empty measure)")]
    TrivialSpace,

    #[error("lambda0 = {re}{im:+}i lies within {distance:.3e} of the spectrum")]
    InSpectrum { re: f64, im: f64, distance: f64 },

    #[error("vector system is not cyclic: Krylov rank {rank} < {dim}")]
    NotCyclic { rank: usize, dim: usize },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
