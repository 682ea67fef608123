//! The qubit observables used throughout the test corpus.

use num_complex::Complex64;

use crate::dim::HilbertDim;
use crate::matrix::ComplexMatrix;
use crate::operator::HermitianOperator;

fn qubit() -> HilbertDim {
    HilbertDim::new(2).expect("2 is a valid dimension")
}

fn from_entries(rows: [[Complex64; 2]; 2]) -> HermitianOperator {
    let data = vec![rows[0][0], rows[0][1], rows[1][0], rows[1][1]];
    let m = ComplexMatrix::new(qubit(), data).expect("finite entries");
    HermitianOperator::new(m).expect("exactly Hermitian")
}

pub fn sigma_x() -> HermitianOperator {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    from_entries([[o, one], [one, o]])
}

pub fn sigma_y() -> HermitianOperator {
    let o = Complex64::new(0.0, 0.0);
    from_entries([[o, Complex64::new(0.0, -1.0)], [Complex64::new(0.0, 1.0), o]])
}

pub fn sigma_z() -> HermitianOperator {
    let o = Complex64::new(0.0, 0.0);
    from_entries([
        [Complex64::new(1.0, 0.0), o],
        [o, Complex64::new(-1.0, 0.0)],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::commutator_observable;

    #[test]
    fn pauli_algebra() {
        let (x, y, z) = (sigma_x(), sigma_y(), sigma_z());
        // sigma_x sigma_y = i sigma_z and cyclic.
        let xy = x.matmul(&y).unwrap();
        let iz = z.matrix().scale(Complex64::new(0.0, 1.0));
        assert!(xy.max_abs_diff(&iz) == 0.0);
        // i[x, z] = 2y up to sign: [x, z] = -2i y, so i[x, z] = 2y.
        let m = commutator_observable(&x, &z).unwrap();
        assert!(m.matrix().max_abs_diff(y.scale_re(2.0).matrix()) == 0.0);
    }
}
