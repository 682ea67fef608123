//! Building eigenvectors of a Hermitian operator C from eigenvectors of C².
//!
//! If u is an eigenvector of C² with eigenvalue λ > 0 but not an eigenvector
//! of C, then v = Cu/√λ satisfies Cu = √λ v and Cv = √λ u, and the
//! superpositions ψ± = u ± v are eigenvectors of C with eigenvalues ±√λ.
//! The pair (u, v) is entangled with respect to C, without any tensor
//! product structure in sight — for the Bell operator, u can be a separable
//! maximizer of ⟨B²⟩ while ψ± are the entangled maximizers of |⟨B⟩|.
//!
//! The practical payoff is [`max_state_from_square`]: find the top
//! eigenvector of the easy-to-diagonalize square, then rotate it into a
//! max-state of the hard-to-diagonalize original.

use num_complex::Complex64;
use thiserror::Error;

use operator_core::{HermitianOperator, PureState, SpectralDecomposition};

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Operator(#[from] operator_core::OperatorError),

    #[error("square eigenvalue {lambda:.3e} is below tolerance; the construction needs λ > 1e-10")]
    LambdaBelowTolerance { lambda: f64 },

    #[error("u is already an eigenvector of C (residual {residual:.3e} ≤ 1e-8); ψ+ or ψ- would degenerate")]
    AlreadyEigenvector { residual: f64 },

    #[error("u is not an eigenvector of C²: residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotSquareEigenvector { residual: f64, tolerance: f64 },

    #[error("the zero operator has no max-state")]
    ZeroOperator,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("construction failed validation: {detail}")]
    ConstructionInvalid { detail: String },
}

pub type Result<T> = std::result::Result<T, SpectralError>;

/// λ must exceed this for the √λ normalization to be meaningful.
pub const LAMBDA_TOL: f64 = 1e-10;

/// Residual below which u counts as an eigenvector of C itself.
pub const EIGENVECTOR_RESIDUAL_TOL: f64 = 1e-8;

/// Validation tolerance on C ψ± = ±√λ ψ±.
pub const EIGENPAIR_TOL: f64 = 1e-9;

/// The C-entangled pair built from one eigenvector of C².
#[derive(Clone, Debug)]
pub struct CEntanglePair {
    pub u: PureState,
    pub v: PureState,
    pub lambda: f64,
    /// Eigenvector of C with eigenvalue +√λ.
    pub psi_plus: PureState,
    /// Eigenvector of C with eigenvalue -√λ.
    pub psi_minus: PureState,
}

/// Rotate an eigenvector u of C² into the ±√λ eigenvectors of C.
pub fn c_entangle(c: &HermitianOperator, u: &PureState) -> Result<CEntanglePair> {
    if c.size() != u.dim().size() {
        return Err(SpectralError::DimensionMismatch {
            left: c.size(),
            right: u.dim().size(),
        });
    }
    let cu = c.matrix().apply(u.amplitudes());
    let c2u = c.matrix().apply(&cu);
    let lambda: f64 = cu.iter().map(|z| z.norm_sqr()).sum();

    let square_residual = offset_norm(&c2u, u.amplitudes(), lambda);
    let square_tol = 1e-8 * (1.0 + lambda);
    if square_residual > square_tol {
        return Err(SpectralError::NotSquareEigenvector {
            residual: square_residual,
            tolerance: square_tol,
        });
    }
    if lambda <= LAMBDA_TOL {
        return Err(SpectralError::LambdaBelowTolerance { lambda });
    }

    let mean = c.expectation(u)?;
    let linear_residual = offset_norm(&cu, u.amplitudes(), mean);
    if linear_residual <= EIGENVECTOR_RESIDUAL_TOL {
        return Err(SpectralError::AlreadyEigenvector {
            residual: linear_residual,
        });
    }

    let sqrt_lambda = lambda.sqrt();
    let v_amps: Vec<Complex64> = cu.iter().map(|z| z / sqrt_lambda).collect();
    let v = PureState::normalized(u.dim().clone(), v_amps.clone())?;

    let plus: Vec<Complex64> = u
        .amplitudes()
        .iter()
        .zip(&v_amps)
        .map(|(a, b)| a + b)
        .collect();
    let minus: Vec<Complex64> = u
        .amplitudes()
        .iter()
        .zip(&v_amps)
        .map(|(a, b)| a - b)
        .collect();
    let psi_plus = PureState::normalized(u.dim().clone(), plus)?.into_canonical_phase();
    let psi_minus = PureState::normalized(u.dim().clone(), minus)?.into_canonical_phase();

    for (state, target) in [(&psi_plus, sqrt_lambda), (&psi_minus, -sqrt_lambda)] {
        let image = c.matrix().apply(state.amplitudes());
        let residual = offset_norm(&image, state.amplitudes(), target);
        if residual > EIGENPAIR_TOL * (1.0 + sqrt_lambda) {
            return Err(SpectralError::ConstructionInvalid {
                detail: format!(
                    "C ψ = {target:.3} ψ fails with residual {residual:.3e}"
                ),
            });
        }
    }

    Ok(CEntanglePair {
        u: u.clone(),
        v,
        lambda,
        psi_plus,
        psi_minus,
    })
}

/// A state maximizing |⟨C⟩|, reached from the square.
#[derive(Clone, Debug)]
pub struct MaxState {
    pub phi: PureState,
    /// |⟨φ|C|φ⟩| = √λ = spectral norm of C.
    pub value: f64,
    /// Sign of the achieved eigenvalue: ⟨φ|C|φ⟩ = sign · value. The plus
    /// branch is preferred; -1 means C is negative definite on the whole
    /// top eigenspace of C² and only -√λ is attainable.
    pub sign: f64,
}

/// φ = (u + λ^{-1/2} C u)/‖·‖ for a top eigenvector u of C². When that
/// superposition degenerates (u already a -√λ eigenvector of C), the next
/// candidate in the top eigenspace is tried; if every candidate degenerates,
/// the minus branch φ = normalize(u - λ^{-1/2} C u) is returned with the
/// sign recorded.
pub fn max_state_from_square(c: &HermitianOperator) -> Result<MaxState> {
    if c.matrix().frobenius_norm() == 0.0 {
        return Err(SpectralError::ZeroOperator);
    }
    let squared = HermitianOperator::new(c.matmul(c)?)?;
    let dec = squared.eig()?;
    let lambda = dec.max_eigenvalue();
    if lambda <= LAMBDA_TOL {
        return Err(SpectralError::LambdaBelowTolerance { lambda });
    }
    let sqrt_lambda = lambda.sqrt();
    let cluster_tol = 1e-8 * (1.0 + lambda);

    let mut fallback: Option<PureState> = None;
    for k in (0..dec.len()).rev() {
        if lambda - dec.eigenvalues()[k] > cluster_tol {
            break;
        }
        let u = &dec.eigenvectors()[k];
        let cu = c.matrix().apply(u.amplitudes());
        let plus: Vec<Complex64> = u
            .amplitudes()
            .iter()
            .zip(&cu)
            .map(|(a, b)| a + b / sqrt_lambda)
            .collect();
        let plus_norm: f64 = plus.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if plus_norm >= 1e-8 {
            let phi = PureState::normalized(u.dim().clone(), plus)?.into_canonical_phase();
            let achieved = c.expectation(&phi)?;
            return Ok(MaxState {
                phi,
                value: achieved.abs(),
                sign: if achieved >= 0.0 { 1.0 } else { -1.0 },
            });
        }
        if fallback.is_none() {
            let minus: Vec<Complex64> = u
                .amplitudes()
                .iter()
                .zip(&cu)
                .map(|(a, b)| a - b / sqrt_lambda)
                .collect();
            fallback = Some(PureState::normalized(u.dim().clone(), minus)?.into_canonical_phase());
        }
    }

    let phi = fallback.expect("top eigenspace is nonempty");
    let achieved = c.expectation(&phi)?;
    Ok(MaxState {
        phi,
        value: achieved.abs(),
        sign: if achieved >= 0.0 { 1.0 } else { -1.0 },
    })
}

/// Comparison of the maximizers of ⟨C²⟩ and |⟨C⟩|.
#[derive(Clone, Debug)]
pub struct MaxStateComparison {
    /// A top eigenvector of C².
    pub psi_sq: PureState,
    /// A top-|eigenvalue| eigenvector of C.
    pub phi_lin: PureState,
    /// True when the two states coincide up to phase.
    pub same: bool,
    /// Top eigenspace of C² as returned by the eigensolver.
    pub top_basis: Vec<PureState>,
    /// Coefficients of phi_lin in `top_basis`; phi_lin always lies inside
    /// the top eigenspace, so these reconstruct it.
    pub coefficients: Vec<Complex64>,
}

/// The max-states of C and C² need not coincide — the square's maximizer can
/// be separable while the original's is entangled — but the former span
/// contains the latter: phi_lin is a combination of top C²-eigenvectors.
pub fn square_vs_linear_max_states(c: &HermitianOperator) -> Result<MaxStateComparison> {
    if c.matrix().frobenius_norm() == 0.0 {
        return Err(SpectralError::ZeroOperator);
    }
    let dec_c = c.eig()?;
    let phi_lin = dec_c.eigenvectors()[dec_c.top_abs_index()].clone();

    let squared = HermitianOperator::new(c.matmul(c)?)?;
    let dec_sq = squared.eig()?;
    // First eigenvector of the top cluster: deterministic, and independent
    // of where phi_lin happens to sit inside a degenerate top eigenspace.
    let lambda = dec_sq.max_eigenvalue();
    let cluster_tol = 1e-8 * (1.0 + lambda);
    let mut first_top = dec_sq.len() - 1;
    while first_top > 0 && lambda - dec_sq.eigenvalues()[first_top - 1] <= cluster_tol {
        first_top -= 1;
    }
    let psi_sq = dec_sq.eigenvectors()[first_top].clone();

    let overlap = psi_sq.inner(&phi_lin).norm();
    let same = overlap > 1.0 - 1e-9;

    let (top_basis, coefficients) = top_decomposition(&dec_sq, &phi_lin);

    Ok(MaxStateComparison {
        psi_sq,
        phi_lin,
        same,
        top_basis,
        coefficients,
    })
}

fn top_decomposition(
    dec_sq: &SpectralDecomposition,
    phi: &PureState,
) -> (Vec<PureState>, Vec<Complex64>) {
    let lambda = dec_sq.max_eigenvalue();
    let cluster_tol = 1e-8 * (1.0 + lambda);
    let mut basis = Vec::new();
    let mut coefficients = Vec::new();
    for k in (0..dec_sq.len()).rev() {
        if lambda - dec_sq.eigenvalues()[k] > cluster_tol {
            break;
        }
        let u = dec_sq.eigenvectors()[k].clone();
        coefficients.push(u.inner(phi));
        basis.push(u);
    }
    (basis, coefficients)
}

fn offset_norm(image: &[Complex64], state: &[Complex64], scale: f64) -> f64 {
    image
        .iter()
        .zip(state)
        .map(|(im, st)| (im - st * scale).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
