//! Named states used across tests and presets.

use num_complex::Complex64;

use operator_core::{HilbertDim, PureState, Result};

/// The two-qubit singlet (e1 ⊗ e2 - e2 ⊗ e1)/√2.
pub fn singlet() -> Result<PureState> {
    let dim = HilbertDim::with_factors(vec![2, 2])?;
    let x = 1.0 / 2.0_f64.sqrt();
    PureState::new(
        dim,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(x, 0.0),
            Complex64::new(-x, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    )
}

/// The two-qubit state (e1 ⊗ e1 + e2 ⊗ e2)/√2; on the maximal scenario it
/// reaches the positive CHSH extreme +√2.
pub fn phi_plus() -> Result<PureState> {
    let dim = HilbertDim::with_factors(vec![2, 2])?;
    let x = 1.0 / 2.0_f64.sqrt();
    PureState::new(
        dim,
        vec![
            Complex64::new(x, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(x, 0.0),
        ],
    )
}

/// Product basis state e_i ⊗ e_j on d_A ⊗ d_B.
pub fn product_basis(dim_a: usize, dim_b: usize, i: usize, j: usize) -> Result<PureState> {
    let a = PureState::basis(HilbertDim::new(dim_a)?, i);
    let b = PureState::basis(HilbertDim::new(dim_b)?, j);
    a.tensor(&b)
}
