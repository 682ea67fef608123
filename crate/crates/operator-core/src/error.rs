use thiserror::Error;

/// Errors raised by constructors and operations in this crate.
#[derive(Debug, Error)]
pub enum OperatorError {
    #[error("dimension must be in 1..={max}, got {got}", max = crate::dim::MAX_DIM)]
    DimensionOutOfRange { got: usize },

    #[error("factor dimensions {factors:?} multiply to {product}, expected {expected}")]
    FactorMismatch {
        factors: Vec<usize>,
        product: usize,
        expected: usize,
    },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix data has {got} entries, expected {expected}")]
    DataLength { got: usize, expected: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("not Hermitian: max |M_ij - conj(M_ji)| = {asymmetry:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { asymmetry: f64, tolerance: f64 },

    #[error("state norm {norm} is more than {tolerance:.1e} away from 1")]
    NotNormalized { norm: f64, tolerance: f64 },

    #[error("cannot normalize a near-zero vector (norm {norm:.3e})")]
    ZeroVector { norm: f64 },

    #[error("not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("trace {trace} is more than {tolerance:.1e} away from 1")]
    TraceNotOne { trace: f64, tolerance: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal {off:.3e})")]
    NonConvergence { sweeps: usize, off: f64 },

    #[error("spectral decomposition failed validation: {detail}")]
    DecompositionInvalid { detail: String },

    #[error("expectation value has imaginary residue {imag:.3e} above tolerance {tolerance:.3e}")]
    ImaginaryResidue { imag: f64, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, OperatorError>;
