//! Finite-dimensional complex Hilbert-space linear algebra.
//!
//! This crate is the substrate for everything else in the workspace: dense
//! complex matrices, Hermitian operators, pure and mixed states, tensor
//! products, commutators, and a deterministic Hermitian eigensolver. All
//! values are immutable after construction and every operation is pure, so
//! the types can be shared freely across worker threads.
//!
//! Dimensions are capped at [`dim::MAX_DIM`] — this is a desk-scale
//! verification library, not a sparse solver.

pub mod dim;
pub mod eig;
pub mod error;
pub mod matrix;
pub mod operator;
pub mod pauli;
pub mod random;
pub mod rng;
pub mod state;
pub mod tolerance;

pub use dim::{HilbertDim, MAX_DIM};
pub use eig::SpectralDecomposition;
pub use error::{OperatorError, Result};
pub use matrix::ComplexMatrix;
pub use operator::{commutator_norm, commutator_observable, jordan_product, HermitianOperator};
pub use rng::{CounterRng, StreamRng};
pub use state::{DensityOperator, PureState};

pub use num_complex::Complex64;
