use num_complex::Complex64;

use crate::dim::HilbertDim;
use crate::error::{OperatorError, Result};

/// Dense square complex matrix, row-major.
///
/// This is the raw carrier; it makes no Hermiticity promise. Entries are
/// validated finite at the construction boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: HilbertDim,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: HilbertDim, data: Vec<Complex64>) -> Result<Self> {
        let d = dim.size();
        if data.len() != d * d {
            return Err(OperatorError::DataLength {
                got: data.len(),
                expected: d * d,
            });
        }
        let m = Self { dim, data };
        m.check_finite()?;
        Ok(m)
    }

    pub fn zeros(dim: HilbertDim) -> Self {
        let d = dim.size();
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); d * d],
        }
    }

    pub fn identity(dim: HilbertDim) -> Self {
        let d = dim.size();
        let mut m = Self::zeros(dim);
        for i in 0..d {
            m.data[i * d + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: HilbertDim, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let d = dim.size();
        let mut data = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    fn check_finite(&self) -> Result<()> {
        let d = self.size();
        for i in 0..d {
            for j in 0..d {
                let z = self.get(i, j);
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(OperatorError::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> &HilbertDim {
        &self.dim
    }

    pub fn size(&self) -> usize {
        self.dim.size()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim.size() + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        let d = self.dim.size();
        self.data[i * d + j] = value;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    fn assert_same_size(&self, other: &Self) -> Result<()> {
        if !self.dim.same_size(&other.dim) {
            return Err(OperatorError::DimensionMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.assert_same_size(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            dim: self.dim.clone(),
            data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.assert_same_size(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            dim: self.dim.clone(),
            data,
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim.clone(),
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Matrix product, summation over k in ascending order.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.assert_same_size(other)?;
        let d = self.size();
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..d {
                    data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        Ok(Self {
            dim: self.dim.clone(),
            data,
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.size();
        Self::from_fn(self.dim.clone(), |i, j| self.data[j * d + i].conj())
    }

    /// Kronecker product; the result dimension carries the factor structure.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let dim = self.dim.tensor(&other.dim)?;
        let da = self.size();
        let db = other.size();
        let d = dim.size();
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for ia in 0..da {
            for ja in 0..da {
                let x = self.data[ia * da + ja];
                for ib in 0..db {
                    for jb in 0..db {
                        data[(ia * db + ib) * d + (ja * db + jb)] = x * other.data[ib * db + jb];
                    }
                }
            }
        }
        Ok(Self { dim, data })
    }

    /// Block-diagonal direct sum; the result dimension is flat.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let da = self.size();
        let db = other.size();
        let dim = HilbertDim::new(da + db)?;
        let mut m = Self::zeros(dim);
        for i in 0..da {
            for j in 0..da {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..db {
            for j in 0..db {
                m.set(da + i, da + j, other.get(i, j));
            }
        }
        Ok(m)
    }

    /// Apply to a vector: (Mv)_i = sum_j M_ij v_j.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let d = self.size();
        assert_eq!(v.len(), d, "vector length must match matrix dimension");
        let mut out = Vec::with_capacity(d);
        for i in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, amp) in v.iter().enumerate() {
                acc += self.data[i * d + j] * amp;
            }
            out.push(acc);
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        let d = self.size();
        (0..d).map(|i| self.data[i * d + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// max_ij |M_ij - conj(M_ji)|.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.size();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                let defect = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(defect);
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert!(self.dim.same_size(&other.dim));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: usize) -> HilbertDim {
        HilbertDim::new(d).unwrap()
    }

    #[test]
    fn rejects_non_finite() {
        let bad = vec![
            Complex64::new(f64::NAN, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        assert!(ComplexMatrix::new(dim(2), bad).is_err());
    }

    #[test]
    fn matmul_identity() {
        let m = ComplexMatrix::from_fn(dim(3), |i, j| Complex64::new((i * 3 + j) as f64, 1.0));
        let id = ComplexMatrix::identity(dim(3));
        assert_eq!(m.matmul(&id).unwrap(), m);
        assert_eq!(id.matmul(&m).unwrap(), m);
    }

    #[test]
    fn kron_dimensions_and_entries() {
        let a = ComplexMatrix::identity(dim(2));
        let b = ComplexMatrix::from_fn(dim(2), |i, j| Complex64::new((2 * i + j) as f64, 0.0));
        let k = a.kron(&b).unwrap();
        assert_eq!(k.size(), 4);
        assert_eq!(k.dim().factor_dims(), Some(&[2, 2][..]));
        assert_eq!(k.get(0, 1), b.get(0, 1));
        assert_eq!(k.get(2, 3), b.get(0, 1));
        assert_eq!(k.get(0, 3), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn adjoint_conjugates() {
        let m = ComplexMatrix::from_fn(dim(2), |i, j| Complex64::new(i as f64, j as f64));
        let a = m.adjoint();
        assert_eq!(a.get(0, 1), Complex64::new(1.0, -0.0));
        assert_eq!(a.get(1, 0), Complex64::new(0.0, -1.0));
    }
}
