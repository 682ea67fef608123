//! Hermitian eigendecomposition via cyclic complex Jacobi rotations.
//!
//! Jacobi is the right tool at this scale: unconditionally convergent for
//! Hermitian input, accurate to near machine precision, and — because the
//! sweep order is fixed — bit-deterministic for identical input bits,
//! including the eigenvector choice inside degenerate eigenspaces.

use num_complex::Complex64;

use crate::error::{OperatorError, Result};
use crate::operator::HermitianOperator;
use crate::state::PureState;
use crate::tolerance;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues sorted ascending with index-aligned orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<PureState>,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[PureState] {
        &self.eigenvectors
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.min_eigenvalue().abs().max(self.max_eigenvalue().abs())
    }

    /// Index of the eigenvalue with the largest magnitude; ties prefer the
    /// more positive eigenvalue, then the lower index.
    pub fn top_abs_index(&self) -> usize {
        let mut best = 0usize;
        for k in 1..self.eigenvalues.len() {
            let (va, vb) = (self.eigenvalues[k].abs(), self.eigenvalues[best].abs());
            if va > vb || (va == vb && self.eigenvalues[k] > self.eigenvalues[best]) {
                best = k;
            }
        }
        best
    }
}

/// Decompose a Hermitian operator.
pub fn eigh(op: &HermitianOperator) -> Result<SpectralDecomposition> {
    eigh_matrix(op.matrix())
}

/// Decompose the Hermitian part of a raw matrix. The solver works on the
/// exactly symmetrized entries, so tolerance-level asymmetry in the input
/// cannot destabilize the sweep.
pub(crate) fn eigh_matrix(
    m: &crate::matrix::ComplexMatrix,
) -> Result<SpectralDecomposition> {
    let d = m.size();
    let scale = m.frobenius_norm();

    // Working copy: a[i][j] for i<j, conjugate mirrored, real diagonal.
    let mut a: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        a[i * d + i] = Complex64::new(m.get(i, i).re, 0.0);
        for j in (i + 1)..d {
            let z = (m.get(i, j) + m.get(j, i).conj()) * 0.5;
            a[i * d + j] = z;
            a[j * d + i] = z.conj();
        }
    }
    let mut v: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        v[i * d + i] = Complex64::new(1.0, 0.0);
    }

    let threshold = 1e-13 * (1.0 + scale);
    let mut off = off_diagonal_norm(&a, d);
    let mut sweeps = 0usize;
    while off > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(OperatorError::NonConvergence {
                sweeps: MAX_SWEEPS,
                off,
            });
        }
        for p in 0..d {
            for q in (p + 1)..d {
                rotate(&mut a, &mut v, d, p, q);
            }
        }
        off = off_diagonal_norm(&a, d);
        sweeps += 1;
    }

    // Sort ascending; stable in the original index for exact ties.
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| {
        a[i * d + i]
            .re
            .partial_cmp(&a[j * d + j].re)
            .expect("eigenvalues are finite")
    });

    let mut eigenvalues = Vec::with_capacity(d);
    let mut eigenvectors = Vec::with_capacity(d);
    for &col in &order {
        eigenvalues.push(a[col * d + col].re);
        let amps: Vec<Complex64> = (0..d).map(|row| v[row * d + col]).collect();
        eigenvectors.push(PureState::normalized(m.dim().clone(), amps)?.into_canonical_phase());
    }

    let decomposition = SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    };
    validate(m, &decomposition)?;
    Ok(decomposition)
}

/// Annihilate a[p][q] with a unitary rotation; accumulate it into v.
fn rotate(a: &mut [Complex64], v: &mut [Complex64], d: usize, p: usize, q: usize) {
    let apq = a[p * d + q];
    let beta = apq.norm();
    if beta == 0.0 {
        return;
    }
    let u = apq / beta; // phase of the off-diagonal entry
    let alpha = a[p * d + p].re;
    let gamma = a[q * d + q].re;

    // Real symmetric 2x2 rotation for [[alpha, beta], [beta, gamma]].
    let tau = (gamma - alpha) / (2.0 * beta);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let cu = u.conj();
    // Column update: A <- A G, with G[p][p]=c, G[p][q]=s, G[q][p]=-s*cu, G[q][q]=c*cu.
    for k in 0..d {
        let kp = a[k * d + p];
        let kq = a[k * d + q];
        a[k * d + p] = kp * c - kq * cu * s;
        a[k * d + q] = kp * s + kq * cu * c;
    }
    // Row update: A <- G† A.
    for k in 0..d {
        let pk = a[p * d + k];
        let qk = a[q * d + k];
        a[p * d + k] = pk * c - qk * u * s;
        a[q * d + k] = pk * s + qk * u * c;
    }
    // Pin what the rotation guarantees analytically.
    a[p * d + q] = Complex64::new(0.0, 0.0);
    a[q * d + p] = Complex64::new(0.0, 0.0);
    a[p * d + p] = Complex64::new(a[p * d + p].re, 0.0);
    a[q * d + q] = Complex64::new(a[q * d + q].re, 0.0);

    // Eigenvector accumulation: V <- V G.
    for k in 0..d {
        let kp = v[k * d + p];
        let kq = v[k * d + q];
        v[k * d + p] = kp * c - kq * cu * s;
        v[k * d + q] = kp * s + kq * cu * c;
    }
}

fn off_diagonal_norm(a: &[Complex64], d: usize) -> f64 {
    let mut acc = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                acc += a[i * d + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn validate(
    m: &crate::matrix::ComplexMatrix,
    dec: &SpectralDecomposition,
) -> Result<()> {
    let d = m.size();
    let norm = dec.max_abs_eigenvalue();

    for i in 0..d {
        for j in i..d {
            let g = dec.eigenvectors[i].inner(&dec.eigenvectors[j]);
            let target = if i == j { 1.0 } else { 0.0 };
            let err = (g - Complex64::new(target, 0.0)).norm();
            if err > tolerance::EIG_GRAM_TOL {
                return Err(OperatorError::DecompositionInvalid {
                    detail: format!("Gram entry ({i}, {j}) off by {err:.3e}"),
                });
            }
        }
    }

    // Reconstruction of the symmetrized input from sum of lambda |v><v|.
    let mut err_sq = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let mut recon = Complex64::new(0.0, 0.0);
            for (lambda, vec) in dec.eigenvalues.iter().zip(&dec.eigenvectors) {
                let amps = vec.amplitudes();
                recon += amps[i] * amps[j].conj() * *lambda;
            }
            let sym = (m.get(i, j) + m.get(j, i).conj()) * 0.5;
            err_sq += (recon - sym).norm_sqr();
        }
    }
    let err = err_sq.sqrt();
    let allowed = tolerance::EIG_RECONSTRUCTION_REL * (1.0 + norm);
    if err > allowed {
        return Err(OperatorError::DecompositionInvalid {
            detail: format!("reconstruction error {err:.3e} exceeds {allowed:.3e}"),
        });
    }
    Ok(())
}
