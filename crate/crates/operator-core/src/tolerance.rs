//! Pinned numerical tolerances for the whole workspace.
//!
//! Tolerances are stated relative wherever the checked quantity scales with
//! the operator norm, and absolute where the scale is fixed (unit-norm
//! states, trace-one densities, dichotomic observables).

/// Hermiticity acceptance: max |M_ij - conj(M_ji)| relative to spectral norm.
pub const HERMITICITY_REL: f64 = 1e-10;

/// Pure-state Euclidean norm must be within this of 1.
pub const STATE_NORM_TOL: f64 = 1e-12;

/// Minimum eigenvalue allowed for a positive-semidefinite operator.
pub const PSD_MIN_EIGENVALUE: f64 = -1e-10;

/// Density-operator trace must be within this of 1.
pub const TRACE_ONE_TOL: f64 = 1e-10;

/// Eigendecomposition reconstruction error, relative to (1 + spectral norm).
pub const EIG_RECONSTRUCTION_REL: f64 = 1e-9;

/// Eigenvector Gram matrix must be within this of the identity (max entry).
pub const EIG_GRAM_TOL: f64 = 1e-9;

/// Imaginary residue allowed on a quadratic form of a Hermitian operator,
/// per unit of operator scale.
pub const EXPECTATION_IMAG_TOL: f64 = 1e-10;

/// |trace of a commutator observable| per dimension.
pub const COMMUTATOR_TRACE_TOL: f64 = 1e-12;
