//! Incompatibility magnitudes: the commutator observables M_A = i[A1, A2]
//! and M_B = i[B1, B2], their common eigenbasis, the predicted maximum of
//! the CHSH correlation, and the inverse formula that reads one commutator
//! norm off an observed violation.

use num_complex::Complex64;
use serde::Serialize;

use operator_core::{
    commutator_norm, commutator_observable, jordan_product, HermitianOperator, HilbertDim,
    PureState,
};

use crate::error::{ChshError, Result};
use crate::scenario::{BOrdering, BellScenario};
use crate::tolerance;

/// One common eigenvector of a commuting Hermitian pair with its two
/// eigenvalues.
#[derive(Clone, Debug)]
pub struct CommonEigenbasisEntry {
    pub state: PureState,
    pub mu_x: f64,
    pub mu_y: f64,
}

/// Simultaneously diagonalize two commuting Hermitian operators.
///
/// First attempt: diagonalize X + γY for a fixed generic γ (the golden-ratio
/// conjugate), which separates the joint eigenspaces unless eigenvalue sums
/// collide. On collision, fall back to block diagonalization: cluster the
/// eigenvalues of X and rotate each cluster basis by the eigenvectors of the
/// compressed Y block.
pub fn common_eigenbasis(
    x: &HermitianOperator,
    y: &HermitianOperator,
) -> Result<Vec<CommonEigenbasisEntry>> {
    if x.size() != y.size() {
        return Err(ChshError::DimensionMismatch {
            left: x.size(),
            right: y.size(),
        });
    }
    let gamma = (5.0_f64.sqrt() - 1.0) / 2.0;
    let shifted = x.add(&y.scale_re(gamma))?;
    let candidate: Vec<PureState> = shifted.eig()?.eigenvectors().to_vec();
    if let Some(entries) = try_basis(&candidate, x, y)? {
        return Ok(entries);
    }

    // Degenerate sums: cluster X, then diagonalize Y inside each cluster.
    let dx = x.eig()?;
    let cluster_tol = 1e-8 * (1.0 + dx.max_abs_eigenvalue());
    let d = x.size();
    let mut basis: Vec<PureState> = Vec::with_capacity(d);
    let mut start = 0usize;
    while start < d {
        let mut end = start + 1;
        while end < d && dx.eigenvalues()[end] - dx.eigenvalues()[end - 1] <= cluster_tol {
            end += 1;
        }
        let members = &dx.eigenvectors()[start..end];
        if members.len() == 1 {
            basis.push(members[0].clone());
        } else {
            let k = members.len();
            let compressed = HermitianOperator::from_upper(HilbertDim::new(k)?, |i, j| {
                let y_vj = y.matrix().apply(members[j].amplitudes());
                members[i]
                    .amplitudes()
                    .iter()
                    .zip(&y_vj)
                    .map(|(a, b)| a.conj() * b)
                    .sum()
            });
            let rotation = compressed.eig()?;
            for w in rotation.eigenvectors() {
                let mut amps = vec![Complex64::new(0.0, 0.0); d];
                for (coeff, member) in w.amplitudes().iter().zip(members) {
                    for (slot, amp) in amps.iter_mut().zip(member.amplitudes()) {
                        *slot += coeff * amp;
                    }
                }
                basis.push(PureState::normalized(x.dim().clone(), amps)?.into_canonical_phase());
            }
        }
        start = end;
    }

    match try_basis(&basis, x, y)? {
        Some(entries) => Ok(entries),
        None => Err(ChshError::CommonEigenbasisFailed {
            detail: "candidate basis does not diagonalize both operators; \
                     inputs are likely not commuting"
                .into(),
        }),
    }
}

/// Validate that both operators are diagonal in the candidate basis; on
/// success return the basis with its eigenvalue pairs.
fn try_basis(
    basis: &[PureState],
    x: &HermitianOperator,
    y: &HermitianOperator,
) -> Result<Option<Vec<CommonEigenbasisEntry>>> {
    let d = basis.len();
    for op in [x, y] {
        let allowed = tolerance::COMMON_BASIS_DIAG_TOL * (1.0 + op.frobenius_norm());
        let images: Vec<Vec<Complex64>> = basis
            .iter()
            .map(|v| op.matrix().apply(v.amplitudes()))
            .collect();
        for (i, bra) in basis.iter().enumerate() {
            for (j, image) in images.iter().enumerate() {
                if i == j {
                    continue;
                }
                let off: Complex64 = bra
                    .amplitudes()
                    .iter()
                    .zip(image)
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                if off.norm() > allowed {
                    return Ok(None);
                }
            }
        }
    }
    let mut entries = Vec::with_capacity(d);
    for v in basis {
        entries.push(CommonEigenbasisEntry {
            state: v.clone(),
            mu_x: x.expectation(v)?,
            mu_y: y.expectation(v)?,
        });
    }
    Ok(Some(entries))
}

/// Everything the commutator algebra says about a scenario.
#[derive(Clone, Debug, Serialize)]
pub struct IncompatibilityReport {
    pub m_a: HermitianOperator,
    pub m_b: HermitianOperator,
    pub norm_ma: f64,
    pub norm_mb: f64,
    /// The product M_A · M_B, Hermitian because the factors commute.
    pub m_ab: HermitianOperator,
    /// True when M_AB vanishes; with both norms nonzero this is the
    /// general-structure edge where violation is impossible despite
    /// incompatibility on both sides.
    pub m_ab_vanishes: bool,
    /// Largest common-eigenvalue product achievable after the B-swap
    /// convention; nonnegative.
    pub mu: f64,
    /// √(1 + μ/4): the maximum |⟨B⟩| predicted by the commutator spectra.
    pub b_predicted: f64,
    pub selected_ordering: BOrdering,
}

pub fn incompatibility_report(s: &BellScenario) -> Result<IncompatibilityReport> {
    let m_a = commutator_observable(s.a1().operator(), s.a2().operator())?;
    let m_b = commutator_observable(s.b1().operator(), s.b2().operator())?;
    let meters_comm = commutator_norm(&m_a, &m_b)?;
    if meters_comm > tolerance::CROSS_COMMUTATION_TOL {
        return Err(ChshError::MetersDoNotCommute { norm: meters_comm });
    }
    let norm_ma = m_a.spectral_norm()?;
    let norm_mb = m_b.spectral_norm()?;
    let m_ab = jordan_product(&m_a, &m_b)?;
    let m_ab_vanishes = m_ab.spectral_norm()? <= tolerance::INCOMPATIBILITY_THRESHOLD;

    let mut best_original = f64::NEG_INFINITY;
    let mut best_swapped = f64::NEG_INFINITY;
    for entry in common_eigenbasis(&m_a, &m_b)? {
        let product = entry.mu_x * entry.mu_y;
        best_original = best_original.max(product);
        best_swapped = best_swapped.max(-product);
    }
    // Symmetric spectra tie the two orderings up to rounding; keep the
    // original unless swapping wins by more than rounding noise.
    let margin = 1e-12 * (1.0 + best_original.abs());
    let (mu, selected_ordering) = if best_swapped > best_original + margin {
        (best_swapped, BOrdering::Swapped)
    } else {
        (best_original, BOrdering::Original)
    };
    // max over both orderings is max_k |p_k|, hence nonnegative; clamp the
    // rounding dust so b_predicted >= 1 holds exactly.
    let mu = mu.max(0.0);
    let b_predicted = (1.0 + 0.25 * mu).sqrt();

    Ok(IncompatibilityReport {
        m_a,
        m_b,
        norm_ma,
        norm_mb,
        m_ab,
        m_ab_vanishes,
        mu,
        b_predicted,
        selected_ordering,
    })
}

/// b = √(1 + ||[a1, a2]|| ||[b1, b2]|| / 4), the maximum CHSH correlation of
/// a tensor-structured scenario over states and B-orderings. Stated for the
/// tensor case only; general structure gets the eigen-solve path.
pub fn quantum_bound(s: &BellScenario) -> Result<f64> {
    let local = s.local().ok_or(ChshError::RequiresTensorStructure)?;
    let norm_a = commutator_norm(local.a1.operator(), local.a2.operator())?;
    let norm_b = commutator_norm(local.b1.operator(), local.b2.operator())?;
    Ok((1.0 + 0.25 * norm_a * norm_b).sqrt())
}

/// ||[a1, a2]|| = 4(b² - 1)/||[b1, b2]||: read the A-pair incompatibility
/// off an observed CHSH maximum, using the B pair as a calibrated meter.
///
/// Statistical estimates of b can dip below the classical bound; they are
/// clamped to 1 first, so noise maps to 0 rather than to a negative
/// magnitude.
pub fn extract_incompatibility(b_observed: f64, norm_mb: f64) -> Result<f64> {
    if norm_mb.is_nan() || norm_mb <= tolerance::INCOMPATIBILITY_THRESHOLD {
        return Err(ChshError::AuxiliaryPairCompatible { norm: norm_mb });
    }
    let b = b_observed.max(1.0);
    Ok(4.0 * (b * b - 1.0) / norm_mb)
}
