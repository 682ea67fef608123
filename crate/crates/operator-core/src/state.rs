use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dim::HilbertDim;
use crate::error::{OperatorError, Result};
use crate::matrix::ComplexMatrix;
use crate::operator::HermitianOperator;
use crate::tolerance;

/// Unit vector in a finite complex Hilbert space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateDto", into = "StateDto")]
pub struct PureState {
    dim: HilbertDim,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Accept amplitudes whose Euclidean norm is within
    /// [`tolerance::STATE_NORM_TOL`] of 1.
    pub fn new(dim: HilbertDim, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != dim.size() {
            return Err(OperatorError::DataLength {
                got: amplitudes.len(),
                expected: dim.size(),
            });
        }
        for (k, z) in amplitudes.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(OperatorError::NonFiniteEntry { row: k, col: 0 });
            }
        }
        let norm = vector_norm(&amplitudes);
        if (norm - 1.0).abs() > tolerance::STATE_NORM_TOL {
            return Err(OperatorError::NotNormalized {
                norm,
                tolerance: tolerance::STATE_NORM_TOL,
            });
        }
        Ok(Self { dim, amplitudes })
    }

    /// Normalize an arbitrary nonzero vector.
    pub fn normalized(dim: HilbertDim, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != dim.size() {
            return Err(OperatorError::DataLength {
                got: amplitudes.len(),
                expected: dim.size(),
            });
        }
        let norm = vector_norm(&amplitudes);
        if !norm.is_finite() || norm < 1e-14 {
            return Err(OperatorError::ZeroVector { norm });
        }
        for z in amplitudes.iter_mut() {
            *z /= norm;
        }
        Ok(Self { dim, amplitudes })
    }

    /// Computational basis state |k⟩.
    pub fn basis(dim: HilbertDim, k: usize) -> Self {
        assert!(k < dim.size(), "basis index {k} out of range");
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim.size()];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Self { dim, amplitudes }
    }

    pub fn dim(&self) -> &HilbertDim {
        &self.dim
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        vector_norm(&self.amplitudes)
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Complex64 {
        debug_assert_eq!(self.dim.size(), other.dim.size());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |self⟩ ⊗ |other⟩.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let dim = self.dim.tensor(&other.dim)?;
        let mut amplitudes = Vec::with_capacity(dim.size());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Ok(Self { dim, amplitudes })
    }

    /// Fix the global phase so the largest-magnitude amplitude is real and
    /// positive (first index wins on exact ties). Deterministic outputs for
    /// golden-file comparisons.
    pub fn into_canonical_phase(mut self) -> Self {
        let mut idx = 0usize;
        let mut best = 0.0f64;
        for (k, z) in self.amplitudes.iter().enumerate() {
            let n = z.norm();
            if n > best {
                best = n;
                idx = k;
            }
        }
        if best > 0.0 {
            let phase = self.amplitudes[idx].conj() / best;
            for z in self.amplitudes.iter_mut() {
                *z *= phase;
            }
        }
        self
    }
}

fn vector_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateDto {
    dim: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl TryFrom<StateDto> for PureState {
    type Error = OperatorError;

    fn try_from(dto: StateDto) -> Result<Self> {
        let dim = HilbertDim::new(dto.dim)?;
        if dto.re.len() != dto.dim || dto.im.len() != dto.dim {
            return Err(OperatorError::DataLength {
                got: dto.re.len().min(dto.im.len()),
                expected: dto.dim,
            });
        }
        let amplitudes = dto
            .re
            .iter()
            .zip(&dto.im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect();
        PureState::new(dim, amplitudes)
    }
}

impl From<PureState> for StateDto {
    fn from(psi: PureState) -> Self {
        StateDto {
            dim: psi.dim.size(),
            re: psi.amplitudes.iter().map(|z| z.re).collect(),
            im: psi.amplitudes.iter().map(|z| z.im).collect(),
        }
    }
}

/// Positive unit-trace operator encoding a (generally mixed) quantum state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HermitianOperator", into = "HermitianOperator")]
pub struct DensityOperator {
    operator: HermitianOperator,
}

impl DensityOperator {
    pub fn new(operator: HermitianOperator) -> Result<Self> {
        let min = operator.eig()?.min_eigenvalue();
        if min < tolerance::PSD_MIN_EIGENVALUE {
            return Err(OperatorError::NotPositive {
                min_eigenvalue: min,
            });
        }
        let trace = operator.trace();
        if (trace - 1.0).abs() > tolerance::TRACE_ONE_TOL {
            return Err(OperatorError::TraceNotOne {
                trace,
                tolerance: tolerance::TRACE_ONE_TOL,
            });
        }
        Ok(Self { operator })
    }

    /// Rank-one projector |ψ⟩⟨ψ|.
    pub fn from_pure(psi: &PureState) -> Self {
        let amps = psi.amplitudes();
        let operator = HermitianOperator::from_upper(psi.dim().clone(), |i, j| {
            amps[i] * amps[j].conj()
        });
        Self { operator }
    }

    pub fn maximally_mixed(dim: HilbertDim) -> Self {
        let d = dim.size();
        Self {
            operator: HermitianOperator::identity(dim).scale_re(1.0 / d as f64),
        }
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.operator
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.operator.matrix()
    }

    pub fn dim(&self) -> &HilbertDim {
        self.operator.dim()
    }

    /// Tr(ρ X), checked real.
    pub fn expectation_of(&self, x: &HermitianOperator) -> Result<f64> {
        let t = x.trace_product(self.matrix())?;
        let allowed = tolerance::EXPECTATION_IMAG_TOL * (1.0 + x.frobenius_norm());
        if t.im.abs() > allowed {
            return Err(OperatorError::ImaginaryResidue {
                imag: t.im.abs(),
                tolerance: allowed,
            });
        }
        Ok(t.re)
    }
}

impl TryFrom<HermitianOperator> for DensityOperator {
    type Error = OperatorError;

    fn try_from(op: HermitianOperator) -> Result<Self> {
        DensityOperator::new(op)
    }
}

impl From<DensityOperator> for HermitianOperator {
    fn from(rho: DensityOperator) -> Self {
        rho.operator
    }
}
