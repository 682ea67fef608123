//! Seeded scenario ensembles and the hand-built edge cases.
//!
//! Random dichotomic observables are Haar-random unitaries conjugating
//! random ±1 diagonals, which covers the full observable manifold. General
//! (non-tensor) scenarios come from conjugating or direct-summing tensor
//! blocks, so cross-compatibility holds by construction.

use num_complex::Complex64;

use operator_core::pauli::{sigma_x, sigma_z};
use operator_core::random::{haar_unitary, random_codiagonal_pair, random_dichotomic};
use operator_core::{ComplexMatrix, HermitianOperator, HilbertDim, StreamRng};

use crate::error::Result;
use crate::scenario::{BellScenario, DichotomicObservable};

/// Tensor scenario with Haar-random local dichotomic observables.
pub fn random_tensor_scenario(dim_a: usize, dim_b: usize, rng: &mut StreamRng) -> Result<BellScenario> {
    let a1 = DichotomicObservable::new(random_dichotomic(dim_a, rng)?)?;
    let a2 = DichotomicObservable::new(random_dichotomic(dim_a, rng)?)?;
    let b1 = DichotomicObservable::new(random_dichotomic(dim_b, rng)?)?;
    let b2 = DichotomicObservable::new(random_dichotomic(dim_b, rng)?)?;
    BellScenario::tensor(a1, a2, b1, b2)
}

/// Scenario without declared tensor structure. Mixes three shapes: a
/// basis-scrambled tensor block, a direct sum of two tensor blocks, and a
/// basis-scrambled direct sum. Total dimension stays at or below 16.
pub fn random_general_scenario(rng: &mut StreamRng) -> Result<BellScenario> {
    let shape = rng.below(3);
    let (a, b) = match shape {
        0 => {
            let parts = random_global_quadruple(pick_dims(rng), rng)?;
            conjugate_quadruple(parts, rng)?
        }
        1 => {
            let first = random_global_quadruple(pick_dims(rng), rng)?;
            let second = random_global_quadruple(pick_dims(rng), rng)?;
            direct_sum_quadruples(first, second)?
        }
        _ => {
            let first = random_global_quadruple(pick_dims(rng), rng)?;
            let second = random_global_quadruple(pick_dims(rng), rng)?;
            conjugate_quadruple(direct_sum_quadruples(first, second)?, rng)?
        }
    };
    let [a1, a2] = a;
    let [b1, b2] = b;
    BellScenario::general(
        DichotomicObservable::new(a1)?,
        DichotomicObservable::new(a2)?,
        DichotomicObservable::new(b1)?,
        DichotomicObservable::new(b2)?,
    )
}

/// Scenario in which one side shares an eigenbasis, so the quantum CHSH
/// inequality must hold. The commuting side is chosen by `commute_a`.
pub fn random_scenario_with_commuting_pair(
    dim_a: usize,
    dim_b: usize,
    commute_a: bool,
    rng: &mut StreamRng,
) -> Result<BellScenario> {
    let (a1, a2, b1, b2) = if commute_a {
        let (a1, a2) = random_codiagonal_pair(dim_a, rng)?;
        (
            a1,
            a2,
            random_dichotomic(dim_b, rng)?,
            random_dichotomic(dim_b, rng)?,
        )
    } else {
        let (b1, b2) = random_codiagonal_pair(dim_b, rng)?;
        (
            random_dichotomic(dim_a, rng)?,
            random_dichotomic(dim_a, rng)?,
            b1,
            b2,
        )
    };
    BellScenario::tensor(
        DichotomicObservable::new(a1)?,
        DichotomicObservable::new(a2)?,
        DichotomicObservable::new(b1)?,
        DichotomicObservable::new(b2)?,
    )
}

/// The maximal two-qubit scenario: a1 = σ_z, a2 = σ_x, b1 = (σ_z + σ_x)/√2,
/// b2 = (σ_z - σ_x)/√2. Both local commutators have norm 2 and ||B|| = √2.
pub fn optimal_qubit_scenario() -> Result<BellScenario> {
    let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
    let b1 = sigma_z().add(&sigma_x())?.scale_re(inv_sqrt2);
    let b2 = sigma_z().sub(&sigma_x())?.scale_re(inv_sqrt2);
    BellScenario::tensor(
        DichotomicObservable::new(sigma_z())?,
        DichotomicObservable::new(sigma_x())?,
        DichotomicObservable::new(b1)?,
        DichotomicObservable::new(b2)?,
    )
}

/// Two-qubit tensor scenario with a compatible A pair (a1 = a2 = σ_z).
pub fn commuting_a_scenario() -> Result<BellScenario> {
    BellScenario::tensor(
        DichotomicObservable::new(sigma_z())?,
        DichotomicObservable::new(sigma_z())?,
        DichotomicObservable::new(sigma_z())?,
        DichotomicObservable::new(sigma_x())?,
    )
}

/// Two-qubit tensor scenario with a compatible B pair (b1 = b2 = σ_z).
pub fn commuting_b_scenario() -> Result<BellScenario> {
    BellScenario::tensor(
        DichotomicObservable::new(sigma_z())?,
        DichotomicObservable::new(sigma_x())?,
        DichotomicObservable::new(sigma_z())?,
        DichotomicObservable::new(sigma_z())?,
    )
}

/// General-structure scenario with both commutators nonzero but
/// M_A · M_B = 0: the A observables act in one block, the B observables in
/// the other, so the supports of M_A and M_B are disjoint and no state
/// violates the quantum CHSH inequality.
pub fn zero_product_mab_scenario() -> Result<BellScenario> {
    let id2 = HermitianOperator::identity(HilbertDim::new(2)?);
    let a1 = sigma_x().direct_sum(&id2)?;
    let a2 = sigma_z().direct_sum(&id2)?;
    let b1 = id2.direct_sum(&sigma_x())?;
    let b2 = id2.direct_sum(&sigma_z())?;
    BellScenario::general(
        DichotomicObservable::new(a1)?,
        DichotomicObservable::new(a2)?,
        DichotomicObservable::new(b1)?,
        DichotomicObservable::new(b2)?,
    )
}

fn pick_dims(rng: &mut StreamRng) -> (usize, usize) {
    let choices = [(2, 2), (2, 3), (3, 2)];
    choices[rng.below(choices.len() as u64) as usize]
}

type Quadruple = ([HermitianOperator; 2], [HermitianOperator; 2]);

/// Global (lifted) operators of a random tensor scenario, without the
/// scenario wrapper.
fn random_global_quadruple(dims: (usize, usize), rng: &mut StreamRng) -> Result<Quadruple> {
    let (dim_a, dim_b) = dims;
    let id_a = HermitianOperator::identity(HilbertDim::new(dim_a)?);
    let id_b = HermitianOperator::identity(HilbertDim::new(dim_b)?);
    let a1 = random_dichotomic(dim_a, rng)?.tensor(&id_b)?;
    let a2 = random_dichotomic(dim_a, rng)?.tensor(&id_b)?;
    let b1 = id_a.tensor(&random_dichotomic(dim_b, rng)?)?;
    let b2 = id_a.tensor(&random_dichotomic(dim_b, rng)?)?;
    Ok(([a1, a2], [b1, b2]))
}

/// Conjugate all four operators by one Haar unitary; compatibility and
/// spectra are preserved while any visible block or factor structure is
/// scrambled away.
fn conjugate_quadruple(parts: Quadruple, rng: &mut StreamRng) -> Result<Quadruple> {
    let ([a1, a2], [b1, b2]) = parts;
    let d = a1.size();
    let u = haar_unitary(d, rng)?;
    let conj = |x: &HermitianOperator| -> Result<HermitianOperator> {
        let m = u.adjoint().matmul(x.matrix())?.matmul(&u)?;
        Ok(HermitianOperator::new(rebuild_flat(m)?)?)
    };
    Ok(([conj(&a1)?, conj(&a2)?], [conj(&b1)?, conj(&b2)?]))
}

fn direct_sum_quadruples(first: Quadruple, second: Quadruple) -> Result<Quadruple> {
    let ([fa1, fa2], [fb1, fb2]) = first;
    let ([sa1, sa2], [sb1, sb2]) = second;
    Ok((
        [fa1.direct_sum(&sa1)?, fa2.direct_sum(&sa2)?],
        [fb1.direct_sum(&sb1)?, fb2.direct_sum(&sb2)?],
    ))
}

/// Drop factor annotations so conjugated operators do not claim a tensor
/// structure they no longer respect.
fn rebuild_flat(m: ComplexMatrix) -> Result<ComplexMatrix> {
    let d = m.size();
    let dim = HilbertDim::new(d)?;
    let data: Vec<Complex64> = m.data().to_vec();
    Ok(ComplexMatrix::new(dim, data)?)
}
