use thiserror::Error;

/// Errors raised by the numerical kernels and the state model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("operator is not Hermitian (residual {residual:e})")]
    NonHermitianInput { residual: f64 },
    #[error("operator does not have unit trace (trace {trace})")]
    NotTraceOne { trace: f64 },
    #[error("non-finite entry in input")]
    NonFinite,
    #[error("correlation index out of range: ({0}, {1})")]
    IndexOutOfRange(usize, usize),
    #[error("degenerate spectrum (discriminant {discriminant:e})")]
    DegenerateSpectrum { discriminant: f64 },
    #[error("1-point vector vanishes")]
    ZeroVector,
}

pub type Result<T> = std::result::Result<T, Error>;
