//! Operator algebra: worked examples with frozen expected values, plus the
//! algebraic invariants that every Hermitian-producing operation must keep.

use num_complex::Complex64;
use operator_core::pauli::{sigma_x, sigma_y, sigma_z};
use operator_core::random::{self, random_hermitian, random_unit_state};
use operator_core::{
    commutator_observable, commutator_norm, ComplexMatrix, HermitianOperator, HilbertDim,
    PureState, StreamRng,
};
use proptest::prelude::*;

fn dim(d: usize) -> HilbertDim {
    HilbertDim::new(d).unwrap()
}

fn diag(values: &[f64]) -> HermitianOperator {
    let d = dim(values.len());
    HermitianOperator::from_upper(d, |i, j| {
        if i == j {
            Complex64::new(values[i], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

// ---- tensor product ----

#[test]
fn tensor_of_identities_is_identity() {
    let id2 = HermitianOperator::identity(dim(2));
    let prod = id2.tensor(&id2).unwrap();
    let id4 = ComplexMatrix::identity(prod.dim().clone());
    assert_eq!(prod.matrix().max_abs_diff(&id4), 0.0);
    assert_eq!(prod.dim().factor_dims(), Some(&[2, 2][..]));
}

#[test]
fn sigma_z_tensor_identity_is_signed_diagonal() {
    let prod = sigma_z().tensor(&HermitianOperator::identity(dim(2))).unwrap();
    let expected = [1.0, 1.0, -1.0, -1.0];
    for (i, want) in expected.iter().enumerate() {
        for j in 0..4 {
            let got = prod.matrix().get(i, j);
            let target = if i == j { *want } else { 0.0 };
            assert_eq!(got, Complex64::new(target, 0.0));
        }
    }
}

#[test]
fn sigma_x_tensor_sigma_x_swaps_basis_pairs() {
    let prod = sigma_x().tensor(&sigma_x()).unwrap();
    let e00 = PureState::basis(prod.dim().clone(), 0);
    let image = prod.matrix().apply(e00.amplitudes());
    // sigma_x flips each factor, so |0⟩⊗|0⟩ maps to |1⟩⊗|1⟩ = index 3.
    let mut expected = vec![Complex64::new(0.0, 0.0); 4];
    expected[3] = Complex64::new(1.0, 0.0);
    assert_eq!(image, expected);
}

#[test]
fn tensor_intertwines_with_vector_tensor() {
    let mut rng = StreamRng::new(5150, 0);
    let x = random_hermitian(2, -1.0, 1.0, &mut rng).unwrap();
    let y = random_hermitian(3, -1.0, 1.0, &mut rng).unwrap();
    let u = random_unit_state(&dim(2), &mut rng).unwrap();
    let w = random_unit_state(&dim(3), &mut rng).unwrap();

    let lhs = x.tensor(&y).unwrap().matrix().apply(u.tensor(&w).unwrap().amplitudes());
    let xu = x.matrix().apply(u.amplitudes());
    let yw = y.matrix().apply(w.amplitudes());
    let mut rhs = Vec::new();
    for a in &xu {
        for b in &yw {
            rhs.push(a * b);
        }
    }
    for (l, r) in lhs.iter().zip(&rhs) {
        assert!((l - r).norm() < 1e-14);
    }
}

// ---- commutator observable ----

#[test]
fn self_commutator_vanishes() {
    let x = sigma_x();
    let m = commutator_observable(&x, &x).unwrap();
    assert_eq!(m.matrix().max_abs_entry(), 0.0);
}

#[test]
fn sigma_x_sigma_z_commutator_is_twice_sigma_y() {
    let m = commutator_observable(&sigma_x(), &sigma_z()).unwrap();
    assert_eq!(m.matrix().max_abs_diff(sigma_y().scale_re(2.0).matrix()), 0.0);
    assert!((m.spectral_norm().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn tensor_factors_on_different_legs_commute() {
    let id = HermitianOperator::identity(dim(2));
    let a = sigma_z().tensor(&id).unwrap();
    let b = id.tensor(&sigma_z()).unwrap();
    let m = commutator_observable(&a, &b).unwrap();
    assert_eq!(m.matrix().max_abs_entry(), 0.0);
}

// ---- spectral norm ----

#[test]
fn spectral_norm_examples() {
    let zero = HermitianOperator::zero(dim(3));
    assert_eq!(zero.spectral_norm().unwrap(), 0.0);

    let m = commutator_observable(&sigma_x(), &sigma_z()).unwrap();
    assert!((m.spectral_norm().unwrap() - 2.0).abs() < 1e-12);

    let d = diag(&[3.0, -1.0, -2.0]);
    assert!((d.spectral_norm().unwrap() - 3.0).abs() < 1e-15);
}

// ---- eigendecomposition ----

#[test]
fn eig_identity_and_sigma_z() {
    let dec = HermitianOperator::identity(dim(2)).eig().unwrap();
    assert_eq!(dec.eigenvalues(), &[1.0, 1.0]);

    let dec = sigma_z().eig().unwrap();
    assert_eq!(dec.eigenvalues(), &[-1.0, 1.0]);
    // Ascending order puts the -1 eigenvector (second basis vector) first.
    assert!((dec.eigenvectors()[0].amplitudes()[1].re - 1.0).abs() < 1e-15);
    assert!((dec.eigenvectors()[1].amplitudes()[0].re - 1.0).abs() < 1e-15);
}

#[test]
fn eig_sigma_x_gives_hadamard_pair() {
    let dec = sigma_x().eig().unwrap();
    assert!((dec.eigenvalues()[0] + 1.0).abs() < 1e-14);
    assert!((dec.eigenvalues()[1] - 1.0).abs() < 1e-14);
    let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
    let minus = dec.eigenvectors()[0].amplitudes();
    let plus = dec.eigenvectors()[1].amplitudes();
    assert!((minus[0].re - inv_sqrt2).abs() < 1e-12 && (minus[1].re + inv_sqrt2).abs() < 1e-12);
    assert!((plus[0].re - inv_sqrt2).abs() < 1e-12 && (plus[1].re - inv_sqrt2).abs() < 1e-12);
}

#[test]
fn eig_is_deterministic_for_identical_bits() {
    let mut rng = StreamRng::new(777, 0);
    let x = random_hermitian(6, -2.0, 2.0, &mut rng).unwrap();
    let a = x.eig().unwrap();
    let b = x.eig().unwrap();
    assert_eq!(a.eigenvalues(), b.eigenvalues());
    for (va, vb) in a.eigenvectors().iter().zip(b.eigenvectors()) {
        assert_eq!(va.amplitudes(), vb.amplitudes());
    }
}

#[test]
fn degenerate_eigenspaces_get_a_deterministic_basis() {
    // Paired spectrum conjugated by a Haar frame: both eigenvalues are
    // doubly degenerate, so the basis inside each eigenspace is the
    // solver's choice — and must be the same choice every time.
    let mut rng = StreamRng::new(778, 0);
    let u = random::haar_unitary(4, &mut rng).unwrap();
    let x = random::conjugate_diagonal(&u, &[1.0, 1.0, -1.0, -1.0]);
    let a = x.eig().unwrap();
    let b = x.eig().unwrap();
    for (va, vb) in a.eigenvectors().iter().zip(b.eigenvectors()) {
        assert_eq!(va.amplitudes(), vb.amplitudes());
    }
    assert!((a.eigenvalues()[0] - a.eigenvalues()[1]).abs() < 1e-12);
}

// ---- expectation ----

#[test]
fn expectation_examples() {
    let mut rng = StreamRng::new(31, 0);
    let psi = random_unit_state(&dim(4), &mut rng).unwrap();
    let id = HermitianOperator::identity(dim(4));
    assert!((id.expectation(&psi).unwrap() - 1.0).abs() < 1e-12);

    let e1 = PureState::basis(dim(2), 0);
    assert!((sigma_z().expectation(&e1).unwrap() - 1.0).abs() < 1e-15);
    assert!(sigma_x().expectation(&e1).unwrap().abs() < 1e-15);
}

#[test]
fn expectation_lies_between_extreme_eigenvalues() {
    let mut rng = StreamRng::new(32, 0);
    for _ in 0..50 {
        let x = random_hermitian(5, -3.0, 3.0, &mut rng).unwrap();
        let dec = x.eig().unwrap();
        let psi = random_unit_state(&dim(5), &mut rng).unwrap();
        let v = x.expectation(&psi).unwrap();
        assert!(v >= dec.min_eigenvalue() - 1e-10);
        assert!(v <= dec.max_eigenvalue() + 1e-10);
    }
}

// ---- invariants ----

#[test]
fn variational_norm_bound_and_attainment() {
    let mut rng = StreamRng::new(99, 0);
    let x = random_hermitian(4, -2.0, 2.0, &mut rng).unwrap();
    let norm = x.spectral_norm().unwrap();
    for _ in 0..1000 {
        let psi = random_unit_state(&dim(4), &mut rng).unwrap();
        assert!(x.expectation(&psi).unwrap().abs() <= norm + 1e-9);
    }
    let dec = x.eig().unwrap();
    let top = &dec.eigenvectors()[dec.top_abs_index()];
    assert!((x.expectation(top).unwrap().abs() - norm).abs() < 1e-10);
}

#[test]
fn commutator_trace_vanishes() {
    let mut rng = StreamRng::new(1234, 0);
    for d in [2usize, 3, 5, 8] {
        let x = random_hermitian(d, -2.0, 2.0, &mut rng).unwrap();
        let y = random_hermitian(d, -2.0, 2.0, &mut rng).unwrap();
        let m = commutator_observable(&x, &y).unwrap();
        assert!(m.trace().abs() <= 1e-12 * d as f64, "trace {}", m.trace());
    }
}

#[test]
fn commutator_norm_is_symmetric_under_swap() {
    let mut rng = StreamRng::new(4321, 0);
    let x = random_hermitian(4, -1.0, 1.0, &mut rng).unwrap();
    let y = random_hermitian(4, -1.0, 1.0, &mut rng).unwrap();
    let xy = commutator_norm(&x, &y).unwrap();
    let yx = commutator_norm(&y, &x).unwrap();
    assert!((xy - yx).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Tensor products and commutator observables of exactly Hermitian
    /// inputs are exactly Hermitian: zero asymmetry, no tolerance budget.
    #[test]
    fn hermiticity_closure_is_exact(seed in any::<u64>(), da in 2usize..4, db in 2usize..4) {
        let mut rng = StreamRng::new(seed, 0);
        let x = random_hermitian(da, -2.0, 2.0, &mut rng).unwrap();
        let y = random_hermitian(db, -2.0, 2.0, &mut rng).unwrap();
        prop_assert_eq!(x.tensor(&y).unwrap().matrix().hermiticity_defect(), 0.0);

        let x2 = random_hermitian(da, -2.0, 2.0, &mut rng).unwrap();
        let m = commutator_observable(&x, &x2).unwrap();
        prop_assert_eq!(m.matrix().hermiticity_defect(), 0.0);
    }

    #[test]
    fn spectral_norm_is_multiplicative_under_tensor(seed in any::<u64>(), da in 2usize..5, db in 2usize..5) {
        let mut rng = StreamRng::new(seed, 1);
        let x = random_hermitian(da, -2.0, 2.0, &mut rng).unwrap();
        let y = random_hermitian(db, -2.0, 2.0, &mut rng).unwrap();
        let lhs = x.tensor(&y).unwrap().spectral_norm().unwrap();
        let rhs = x.spectral_norm().unwrap() * y.spectral_norm().unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs));
    }

    /// Random decompositions reconstruct the input and are orthonormal.
    #[test]
    fn eig_reconstructs_random_operators(seed in any::<u64>(), d in 2usize..8) {
        let mut rng = StreamRng::new(seed, 2);
        let x = random_hermitian(d, -3.0, 3.0, &mut rng).unwrap();
        let dec = x.eig().unwrap();
        let norm = dec.max_abs_eigenvalue();

        let mut recon = ComplexMatrix::zeros(x.dim().clone());
        for (lambda, v) in dec.eigenvalues().iter().zip(dec.eigenvectors()) {
            let amps = v.amplitudes();
            for i in 0..d {
                for j in 0..d {
                    let cur = recon.get(i, j);
                    recon.set(i, j, cur + amps[i] * amps[j].conj() * *lambda);
                }
            }
        }
        let err = recon.sub(x.matrix()).unwrap().frobenius_norm();
        prop_assert!(err <= 1e-9 * (1.0 + norm), "reconstruction error {}", err);

        for i in 0..d {
            for j in 0..d {
                let g = dec.eigenvectors()[i].inner(&dec.eigenvectors()[j]);
                let target = if i == j { 1.0 } else { 0.0 };
                prop_assert!((g - Complex64::new(target, 0.0)).norm() <= 1e-9);
            }
        }
    }

    /// Haar-conjugated diagonals reproduce their prescribed spectrum.
    #[test]
    fn conjugated_spectrum_round_trips(seed in any::<u64>(), d in 2usize..7) {
        let mut rng = StreamRng::new(seed, 3);
        let u = random::haar_unitary(d, &mut rng).unwrap();
        let mut values: Vec<f64> = (0..d).map(|_| rng.uniform_in(-2.0, 2.0)).collect();
        let op = random::conjugate_diagonal(&u, &values);
        let mut got = op.eig().unwrap().eigenvalues().to_vec();
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (g, w) in got.iter().zip(&values) {
            prop_assert!((g - w).abs() < 1e-10);
        }
    }
}
