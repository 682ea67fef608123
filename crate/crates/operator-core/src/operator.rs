use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dim::HilbertDim;
use crate::eig::{self, SpectralDecomposition};
use crate::error::{OperatorError, Result};
use crate::matrix::ComplexMatrix;
use crate::state::PureState;
use crate::tolerance;

/// Dense complex self-adjoint matrix on a finite-dimensional Hilbert space.
///
/// Constructors validate the Hermiticity invariant. Operations that produce
/// Hermitian results (tensor products, commutator observables, Jordan
/// products) build the upper triangle and mirror it, so their outputs are
/// self-adjoint bit-for-bit — no tolerance is consumed. Non-Hermitian inputs
/// are never repaired silently; use [`HermitianOperator::symmetrized`] when
/// symmetrization is actually wanted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OperatorDto", into = "OperatorDto")]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
}

impl HermitianOperator {
    /// Accept a matrix whose asymmetry is at most
    /// [`tolerance::HERMITICITY_REL`] relative to its spectral norm.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let defect = matrix.hermiticity_defect();
        if defect == 0.0 {
            return Ok(Self { matrix });
        }
        let scale = eig::eigh_matrix(&matrix)?.max_abs_eigenvalue();
        let allowed = tolerance::HERMITICITY_REL * scale;
        if defect > allowed {
            return Err(OperatorError::NotHermitian {
                asymmetry: defect,
                tolerance: allowed,
            });
        }
        Ok(Self { matrix })
    }

    /// Explicit symmetrization (M + M†)/2 of an arbitrary matrix.
    pub fn symmetrized(matrix: ComplexMatrix) -> Self {
        Self::from_upper(matrix.dim().clone(), |i, j| {
            (matrix.get(i, j) + matrix.get(j, i).conj()) * 0.5
        })
    }

    /// Build from the upper triangle; the lower triangle is mirrored and the
    /// diagonal imaginary part dropped, so the result is exactly Hermitian.
    pub fn from_upper(dim: HilbertDim, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let d = dim.size();
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..d {
            for j in i..d {
                let z = f(i, j);
                if i == j {
                    m.set(i, i, Complex64::new(z.re, 0.0));
                } else {
                    m.set(i, j, z);
                    m.set(j, i, z.conj());
                }
            }
        }
        Self { matrix: m }
    }

    pub fn identity(dim: HilbertDim) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim),
        }
    }

    pub fn zero(dim: HilbertDim) -> Self {
        Self {
            matrix: ComplexMatrix::zeros(dim),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> &HilbertDim {
        self.matrix.dim()
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    /// Entrywise sum; Hermiticity is preserved exactly by the arithmetic.
    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.sub(&other.matrix)?,
        })
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        Self {
            matrix: self.matrix.scale_re(factor),
        }
    }

    /// Kronecker product X ⊗ Y; the result carries factor_dims [d_X, d_Y].
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.kron(&other.matrix)?,
        })
    }

    /// Block direct sum; useful for building commuting structures that do
    /// not respect any tensor factorization.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.direct_sum(&other.matrix)?,
        })
    }

    /// Plain matrix product; not Hermitian in general, hence a raw matrix.
    pub fn matmul(&self, other: &Self) -> Result<ComplexMatrix> {
        self.matrix.matmul(&other.matrix)
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.frobenius_norm()
    }

    pub fn eig(&self) -> Result<SpectralDecomposition> {
        eig::eigh(self)
    }

    /// Largest |eigenvalue|; also the sup of |⟨ψ|X|ψ⟩| over unit states.
    pub fn spectral_norm(&self) -> Result<f64> {
        Ok(self.eig()?.max_abs_eigenvalue())
    }

    /// ⟨ψ|X|ψ⟩. The imaginary residue is checked against tolerance before
    /// being discarded; a large residue signals a non-Hermitian input.
    pub fn expectation(&self, psi: &PureState) -> Result<f64> {
        if psi.dim().size() != self.size() {
            return Err(OperatorError::DimensionMismatch {
                left: self.size(),
                right: psi.dim().size(),
            });
        }
        let image = self.matrix.apply(psi.amplitudes());
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in psi.amplitudes().iter().zip(&image) {
            acc += a.conj() * b;
        }
        let allowed = tolerance::EXPECTATION_IMAG_TOL * (1.0 + self.matrix.frobenius_norm());
        if acc.im.abs() > allowed {
            return Err(OperatorError::ImaginaryResidue {
                imag: acc.im.abs(),
                tolerance: allowed,
            });
        }
        Ok(acc.re)
    }

    /// Tr(X ρ-like-matrix) without forming the full product.
    pub fn trace_product(&self, other: &ComplexMatrix) -> Result<Complex64> {
        if self.size() != other.size() {
            return Err(OperatorError::DimensionMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let d = self.size();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                acc += self.matrix.get(i, j) * other.get(j, i);
            }
        }
        Ok(acc)
    }
}

/// X ⊗ Y for Hermitian X, Y.
pub fn tensor_product(x: &HermitianOperator, y: &HermitianOperator) -> Result<HermitianOperator> {
    x.tensor(y)
}

/// The commutator observable M = i[X, Y], self-adjoint for Hermitian X, Y.
/// Its spectral norm quantifies how far X and Y are from joint measurability.
pub fn commutator_observable(
    x: &HermitianOperator,
    y: &HermitianOperator,
) -> Result<HermitianOperator> {
    let xy = x.matmul(y)?;
    let yx = y.matmul(x)?;
    let i_unit = Complex64::new(0.0, 1.0);
    Ok(HermitianOperator::from_upper(
        x.dim().clone(),
        |row, col| i_unit * (xy.get(row, col) - yx.get(row, col)),
    ))
}

/// ‖[X, Y]‖ = spectral norm of i[X, Y].
pub fn commutator_norm(x: &HermitianOperator, y: &HermitianOperator) -> Result<f64> {
    commutator_observable(x, y)?.spectral_norm()
}

/// Symmetrized product (XY + YX)/2; coincides with XY when X and Y commute
/// and is exactly Hermitian regardless.
pub fn jordan_product(x: &HermitianOperator, y: &HermitianOperator) -> Result<HermitianOperator> {
    let xy = x.matmul(y)?;
    let yx = y.matmul(x)?;
    Ok(HermitianOperator::from_upper(
        x.dim().clone(),
        |row, col| (xy.get(row, col) + yx.get(row, col)) * 0.5,
    ))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorDto {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    factor_dims: Option<Vec<usize>>,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl TryFrom<OperatorDto> for HermitianOperator {
    type Error = OperatorError;

    fn try_from(dto: OperatorDto) -> Result<Self> {
        let dim = HilbertDim::from_parts(dto.dim, dto.factor_dims)?;
        let d = dim.size();
        if dto.re.len() != d || dto.im.len() != d {
            return Err(OperatorError::DataLength {
                got: dto.re.len().max(dto.im.len()) * d,
                expected: d * d,
            });
        }
        let mut data = Vec::with_capacity(d * d);
        for (re_row, im_row) in dto.re.iter().zip(&dto.im) {
            if re_row.len() != d || im_row.len() != d {
                return Err(OperatorError::DataLength {
                    got: re_row.len().min(im_row.len()),
                    expected: d,
                });
            }
            for (&re, &im) in re_row.iter().zip(im_row) {
                data.push(Complex64::new(re, im));
            }
        }
        HermitianOperator::new(ComplexMatrix::new(dim, data)?)
    }
}

impl From<HermitianOperator> for OperatorDto {
    fn from(op: HermitianOperator) -> Self {
        let d = op.size();
        let mut re = vec![vec![0.0; d]; d];
        let mut im = vec![vec![0.0; d]; d];
        for i in 0..d {
            for j in 0..d {
                let z = op.matrix.get(i, j);
                re[i][j] = z.re;
                im[i][j] = z.im;
            }
        }
        OperatorDto {
            dim: d,
            factor_dims: op.dim().factor_dims().map(|f| f.to_vec()),
            re,
            im,
        }
    }
}

