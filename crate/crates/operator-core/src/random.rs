//! Seeded random ensembles: Haar unitaries, dichotomic observables with
//! prescribed spectra, PSD operators, densities, and unit states.
//!
//! All Hermitian outputs go through a mirrored conjugation, so they satisfy
//! the Hermiticity invariant exactly, not just within tolerance.

use num_complex::Complex64;

use crate::dim::HilbertDim;
use crate::error::Result;
use crate::matrix::ComplexMatrix;
use crate::operator::HermitianOperator;
use crate::rng::StreamRng;
use crate::state::{DensityOperator, PureState};

/// Haar-distributed unitary: QR of a complex Gaussian matrix via modified
/// Gram-Schmidt. MGS produces a real positive R diagonal, which is exactly
/// the phase fixing that makes the distribution Haar.
pub fn haar_unitary(d: usize, rng: &mut StreamRng) -> Result<ComplexMatrix> {
    let dim = HilbertDim::new(d)?;
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while columns.len() < d {
        let mut v: Vec<Complex64> = (0..d)
            .map(|_| {
                let (re, im) = rng.normal_pair();
                Complex64::new(re, im)
            })
            .collect();
        for q in &columns {
            let overlap: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vk, qk) in v.iter_mut().zip(q) {
                *vk -= overlap * qk;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue; // essentially impossible; redraw keeps the stream deterministic
        }
        for z in v.iter_mut() {
            *z /= norm;
        }
        columns.push(v);
    }
    Ok(ComplexMatrix::from_fn(dim, |i, j| columns[j][i]))
}

/// U diag(values) U†, built entry-by-entry on the upper triangle so the
/// result is exactly Hermitian for any unitary U and real values.
pub fn conjugate_diagonal(u: &ComplexMatrix, values: &[f64]) -> HermitianOperator {
    let d = u.size();
    assert_eq!(values.len(), d, "one eigenvalue per dimension");
    HermitianOperator::from_upper(u.dim().clone(), |i, j| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &lambda) in values.iter().enumerate() {
            acc += u.get(i, k) * u.get(j, k).conj() * lambda;
        }
        acc
    })
}

/// Random Hermitian operator with eigenvalues uniform in [lo, hi].
pub fn random_hermitian(d: usize, lo: f64, hi: f64, rng: &mut StreamRng) -> Result<HermitianOperator> {
    let u = haar_unitary(d, rng)?;
    let values: Vec<f64> = (0..d).map(|_| rng.uniform_in(lo, hi)).collect();
    Ok(conjugate_diagonal(&u, &values))
}

/// Random observable with spectrum in {-1, +1}: a Haar unitary conjugating a
/// random ±1 diagonal. All-equal diagonals (±identity) are allowed.
pub fn random_dichotomic(d: usize, rng: &mut StreamRng) -> Result<HermitianOperator> {
    let u = haar_unitary(d, rng)?;
    let values: Vec<f64> = (0..d).map(|_| rng.sign()).collect();
    Ok(conjugate_diagonal(&u, &values))
}

/// Dichotomic observable guaranteed to have both eigenvalues present, so it
/// is never a multiple of the identity. Requires d >= 2.
pub fn random_dichotomic_mixed(d: usize, rng: &mut StreamRng) -> Result<HermitianOperator> {
    assert!(d >= 2, "a mixed ±1 spectrum needs dimension >= 2");
    let u = haar_unitary(d, rng)?;
    let mut values: Vec<f64> = (0..d).map(|_| rng.sign()).collect();
    if values.iter().all(|&v| v == values[0]) {
        let flip = rng.below(d as u64) as usize;
        values[flip] = -values[flip];
    }
    Ok(conjugate_diagonal(&u, &values))
}

/// Two dichotomic observables sharing one Haar eigenbasis; they commute up
/// to rounding.
pub fn random_codiagonal_pair(
    d: usize,
    rng: &mut StreamRng,
) -> Result<(HermitianOperator, HermitianOperator)> {
    let u = haar_unitary(d, rng)?;
    let first: Vec<f64> = (0..d).map(|_| rng.sign()).collect();
    let second: Vec<f64> = (0..d).map(|_| rng.sign()).collect();
    Ok((
        conjugate_diagonal(&u, &first),
        conjugate_diagonal(&u, &second),
    ))
}

/// Random positive-semidefinite operator with eigenvalues in [0, max].
pub fn random_psd(d: usize, max: f64, rng: &mut StreamRng) -> Result<HermitianOperator> {
    let u = haar_unitary(d, rng)?;
    let values: Vec<f64> = (0..d).map(|_| rng.uniform_in(0.0, max)).collect();
    Ok(conjugate_diagonal(&u, &values))
}

/// Random full-support density operator.
pub fn random_density(d: usize, rng: &mut StreamRng) -> Result<DensityOperator> {
    let u = haar_unitary(d, rng)?;
    let mut values: Vec<f64> = (0..d).map(|_| rng.uniform_open()).collect();
    let total: f64 = values.iter().sum();
    for v in values.iter_mut() {
        *v /= total;
    }
    DensityOperator::new(conjugate_diagonal(&u, &values))
}

/// Haar-random unit state.
pub fn random_unit_state(dim: &HilbertDim, rng: &mut StreamRng) -> Result<PureState> {
    let amplitudes: Vec<Complex64> = (0..dim.size())
        .map(|_| {
            let (re, im) = rng.normal_pair();
            Complex64::new(re, im)
        })
        .collect();
    PureState::normalized(dim.clone(), amplitudes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = StreamRng::new(7, 0);
        for d in [2usize, 3, 5, 8] {
            let u = haar_unitary(d, &mut rng).unwrap();
            let gram = u.adjoint().matmul(&u).unwrap();
            let id = ComplexMatrix::identity(u.dim().clone());
            assert!(
                gram.max_abs_diff(&id) < 1e-12,
                "U†U deviates by {}",
                gram.max_abs_diff(&id)
            );
        }
    }

    #[test]
    fn conjugated_diagonal_is_exactly_hermitian() {
        let mut rng = StreamRng::new(11, 0);
        for d in [2usize, 4, 6] {
            let op = random_hermitian(d, -2.0, 2.0, &mut rng).unwrap();
            assert_eq!(op.matrix().hermiticity_defect(), 0.0);
        }
    }

    #[test]
    fn dichotomic_spectrum_is_plus_minus_one() {
        let mut rng = StreamRng::new(3, 5);
        let op = random_dichotomic_mixed(4, &mut rng).unwrap();
        for &lambda in op.eig().unwrap().eigenvalues() {
            assert!(
                (lambda.abs() - 1.0).abs() < 1e-12,
                "eigenvalue {lambda} is not ±1"
            );
        }
    }

    #[test]
    fn codiagonal_pair_commutes() {
        let mut rng = StreamRng::new(19, 2);
        let (a, b) = random_codiagonal_pair(4, &mut rng).unwrap();
        let norm = crate::operator::commutator_norm(&a, &b).unwrap();
        assert!(norm < 1e-13, "commutator norm {norm}");
    }

    #[test]
    fn density_is_valid_and_seed_deterministic() {
        let rho1 = random_density(5, &mut StreamRng::new(100, 1)).unwrap();
        let rho2 = random_density(5, &mut StreamRng::new(100, 1)).unwrap();
        assert_eq!(rho1.matrix().data(), rho2.matrix().data());
        assert!((rho1.operator().trace() - 1.0).abs() < 1e-12);
    }
}
