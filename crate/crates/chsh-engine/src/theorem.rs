//! The local-incompatibility criterion for CHSH violation and the separable
//! witness for the squared Bell operator.
//!
//! For tensor-structured scenarios, violation of |⟨B⟩| ≤ 1 for some state is
//! equivalent to both local commutators being nonzero. The witness for the
//! square needs no entanglement at all: a product of local commutator
//! eigenvectors already pushes ⟨B²⟩ above 1.

use serde::Serialize;

use operator_core::{commutator_observable, HermitianOperator, PureState};

use crate::bell::{bell_operator, chsh_correlation};
use crate::error::{ChshError, Result};
use crate::scenario::{BOrdering, BellScenario};
use crate::tolerance;

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Outcome {
    pub locally_incompatible: bool,
    pub violation_exists: bool,
    pub agree: bool,
    /// Best ||B|| over the two B-orderings.
    pub max_bell_norm: f64,
    pub norm_ma: f64,
    pub norm_mb: f64,
    pub selected_ordering: BOrdering,
    /// Present when a violation exists: a state with |⟨B⟩| > 1 for the
    /// selected ordering.
    pub witness: Option<PureState>,
    pub witness_correlation: Option<f64>,
}

/// Check, on a tensor-structured scenario, that local incompatibility on
/// both factors and existence of a violating state are the same predicate.
pub fn theorem1_check(s: &BellScenario) -> Result<Theorem1Outcome> {
    let local = s.local().ok_or(ChshError::RequiresTensorStructure)?;
    let norm_ma = operator_core::commutator_norm(local.a1.operator(), local.a2.operator())?;
    let norm_mb = operator_core::commutator_norm(local.b1.operator(), local.b2.operator())?;
    let locally_incompatible = norm_ma > tolerance::INCOMPATIBILITY_THRESHOLD
        && norm_mb > tolerance::INCOMPATIBILITY_THRESHOLD;

    let original = bell_operator(s)?.eig()?;
    let swapped_scenario = s.swapped_b();
    let swapped = bell_operator(&swapped_scenario)?.eig()?;
    // Prefer the original ordering unless swapping wins beyond rounding.
    let margin = 1e-12 * (1.0 + original.max_abs_eigenvalue());
    let (decomposition, scenario, selected_ordering, max_bell_norm) =
        if swapped.max_abs_eigenvalue() > original.max_abs_eigenvalue() + margin {
            let norm = swapped.max_abs_eigenvalue();
            (swapped, swapped_scenario, BOrdering::Swapped, norm)
        } else {
            let norm = original.max_abs_eigenvalue();
            (original, s.clone(), BOrdering::Original, norm)
        };

    let violation_exists = max_bell_norm > 1.0 + tolerance::VIOLATION_MARGIN;
    let (witness, witness_correlation) = if violation_exists {
        let state = decomposition.eigenvectors()[decomposition.top_abs_index()].clone();
        let correlation = chsh_correlation(&scenario, &state)?;
        (Some(state), Some(correlation))
    } else {
        (None, None)
    };

    Ok(Theorem1Outcome {
        locally_incompatible,
        violation_exists,
        agree: locally_incompatible == violation_exists,
        max_bell_norm,
        norm_ma,
        norm_mb,
        selected_ordering,
        witness,
        witness_correlation,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparableSquareWitness {
    /// Product state ψ_A ⊗ ψ_B of local commutator eigenvectors.
    pub psi_sep: PureState,
    /// ⟨ψ|B²|ψ⟩ for the selected ordering; equals 1 + μ_A μ_B / 4 > 1.
    pub value: f64,
    pub mu_a: f64,
    pub mu_b: f64,
    pub ordering: BOrdering,
}

/// Build the separable state that pushes ⟨B²⟩ above 1: eigenvectors of the
/// local commutator observables with the largest positive eigenvalue
/// product, swapping the B-observables when the best product is negative.
pub fn separable_square_witness(s: &BellScenario) -> Result<SeparableSquareWitness> {
    let local = s.local().ok_or(ChshError::RequiresTensorStructure)?;
    let bold_ma = commutator_observable(local.a1.operator(), local.a2.operator())?;
    let bold_mb = commutator_observable(local.b1.operator(), local.b2.operator())?;
    let dec_a = bold_ma.eig()?;
    let dec_b = bold_mb.eig()?;
    let norm_ma = dec_a.max_abs_eigenvalue();
    let norm_mb = dec_b.max_abs_eigenvalue();
    if norm_ma <= tolerance::INCOMPATIBILITY_THRESHOLD
        || norm_mb <= tolerance::INCOMPATIBILITY_THRESHOLD
    {
        return Err(ChshError::NoPositiveProduct { norm_ma, norm_mb });
    }

    let mut best: Option<(f64, usize, usize)> = None;
    for (i, &mu_a) in dec_a.eigenvalues().iter().enumerate() {
        for (j, &mu_b) in dec_b.eigenvalues().iter().enumerate() {
            let size = (mu_a * mu_b).abs();
            if best.is_none_or(|(b, _, _)| size > b) {
                best = Some((size, i, j));
            }
        }
    }
    let (_, i, j) = best.expect("spectra are nonempty");
    let mu_a = dec_a.eigenvalues()[i];
    let mu_b = dec_b.eigenvalues()[j];
    let ordering = if mu_a * mu_b > 0.0 {
        BOrdering::Original
    } else {
        BOrdering::Swapped
    };

    let psi_sep = dec_a.eigenvectors()[i].tensor(&dec_b.eigenvectors()[j])?;
    let scenario = s.with_ordering(ordering);
    let bell = bell_operator(&scenario)?;
    let squared = HermitianOperator::new(bell.matmul(&bell)?)?;
    let value = squared.expectation(&psi_sep)?;

    Ok(SeparableSquareWitness {
        psi_sep,
        value,
        mu_a,
        // after the swap the relevant B-eigenvalue changes sign
        mu_b: if ordering == BOrdering::Swapped { -mu_b } else { mu_b },
        ordering,
    })
}
