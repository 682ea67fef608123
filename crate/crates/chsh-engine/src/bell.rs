//! The Bell operator, the CHSH correlation functional, and the Landau
//! identity that ties the operator's square to the setting commutators.

use serde::Serialize;

use operator_core::{jordan_product, HermitianOperator, PureState};

use crate::error::Result;
use crate::scenario::BellScenario;
use crate::tolerance;

/// B = (1/2)[A1(B1 + B2) + A2(B1 - B2)].
///
/// Products are taken in Jordan-symmetrized form (XY + YX)/2, which agrees
/// with the plain product whenever the cross pairs commute exactly and keeps
/// the output self-adjoint bit-for-bit when they commute only within
/// tolerance.
pub fn bell_operator(s: &BellScenario) -> Result<HermitianOperator> {
    let b_plus = s.b1().operator().add(s.b2().operator())?;
    let b_minus = s.b1().operator().sub(s.b2().operator())?;
    let first = jordan_product(s.a1().operator(), &b_plus)?;
    let second = jordan_product(s.a2().operator(), &b_minus)?;
    Ok(first.add(&second)?.scale_re(0.5))
}

/// (1/2)[⟨A1B1⟩ + ⟨A1B2⟩ + ⟨A2B1⟩ - ⟨A2B2⟩] on a pure state; equal to the
/// Bell-operator expectation.
pub fn chsh_correlation(s: &BellScenario, psi: &PureState) -> Result<f64> {
    let mut total = 0.0;
    let terms: [(_, _, f64); 4] = [
        (s.a1(), s.b1(), 1.0),
        (s.a1(), s.b2(), 1.0),
        (s.a2(), s.b1(), 1.0),
        (s.a2(), s.b2(), -1.0),
    ];
    for (a, b, sign) in terms {
        let product = jordan_product(a.operator(), b.operator())?;
        total += sign * product.expectation(psi)?;
    }
    Ok(0.5 * total)
}

/// The right-hand side of the Landau identity,
/// I - (1/4)[A1,A2][B1,B2] = I + (1/4) M_A M_B.
pub fn landau_square(s: &BellScenario) -> Result<HermitianOperator> {
    let m_a = operator_core::commutator_observable(s.a1().operator(), s.a2().operator())?;
    let m_b = operator_core::commutator_observable(s.b1().operator(), s.b2().operator())?;
    let m_ab = jordan_product(&m_a, &m_b)?;
    let identity = HermitianOperator::identity(s.dim().clone());
    identity.add(&m_ab.scale_re(0.25)).map_err(Into::into)
}

/// Outcome of checking ||B·B - landau_square|| against the pinned tolerance.
#[derive(Clone, Debug, Serialize)]
pub struct LandauCheck {
    pub residual: f64,
    pub bell_norm: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Compare the directly squared Bell operator against the Landau form.
pub fn landau_check(s: &BellScenario) -> Result<LandauCheck> {
    let bell = bell_operator(s)?;
    let bell_norm = bell.spectral_norm()?;
    let squared = bell.matmul(&bell)?;
    let diff = squared.sub(landau_square(s)?.matrix())?;
    let residual = HermitianOperator::symmetrized(diff).spectral_norm()?;
    let tolerance = tolerance::LANDAU_RESIDUAL_REL * (1.0 + bell_norm * bell_norm);
    Ok(LandauCheck {
        residual,
        bell_norm,
        tolerance,
        pass: residual <= tolerance,
    })
}
