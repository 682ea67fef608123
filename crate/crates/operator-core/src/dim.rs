use serde::{Deserialize, Serialize};

use crate::error::{OperatorError, Result};

/// Hard cap on Hilbert-space dimension. Everything here is dense and
/// desk-scale; the cap keeps accidental blowups loud.
pub const MAX_DIM: usize = 64;

/// Dimension of a finite complex Hilbert space, optionally carrying the
/// tensor-factor structure of a compound system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DimDto", into = "DimDto")]
pub struct HilbertDim {
    d: usize,
    factor_dims: Option<Vec<usize>>,
}

impl HilbertDim {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 || d > MAX_DIM {
            return Err(OperatorError::DimensionOutOfRange { got: d });
        }
        Ok(Self {
            d,
            factor_dims: None,
        })
    }

    /// Dimension with explicit tensor factors; the total is their product.
    pub fn with_factors(factors: Vec<usize>) -> Result<Self> {
        let product: usize = factors.iter().product();
        if factors.is_empty() || factors.contains(&0) || product == 0 || product > MAX_DIM {
            return Err(OperatorError::DimensionOutOfRange { got: product });
        }
        Ok(Self {
            d: product,
            factor_dims: Some(factors),
        })
    }

    pub fn from_parts(d: usize, factor_dims: Option<Vec<usize>>) -> Result<Self> {
        match factor_dims {
            None => Self::new(d),
            Some(factors) => {
                let dim = Self::with_factors(factors)?;
                if dim.d != d {
                    return Err(OperatorError::FactorMismatch {
                        factors: dim.factor_dims.unwrap_or_default(),
                        product: dim.d,
                        expected: d,
                    });
                }
                Ok(dim)
            }
        }
    }

    pub fn size(&self) -> usize {
        self.d
    }

    pub fn factor_dims(&self) -> Option<&[usize]> {
        self.factor_dims.as_deref()
    }

    /// Dimension of the tensor product space; factors are concatenated so a
    /// product of plain dims d_A, d_B carries factor_dims [d_A, d_B].
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let mut factors = Vec::new();
        match &self.factor_dims {
            Some(f) => factors.extend_from_slice(f),
            None => factors.push(self.d),
        }
        match &other.factor_dims {
            Some(f) => factors.extend_from_slice(f),
            None => factors.push(other.d),
        }
        Self::with_factors(factors)
    }

    /// Same total dimension, with any factor annotation dropped.
    pub fn flattened(&self) -> Self {
        Self {
            d: self.d,
            factor_dims: None,
        }
    }

    /// True when total dimensions agree (factor structure is an annotation,
    /// not part of vector-space identity).
    pub fn same_size(&self, other: &Self) -> bool {
        self.d == other.d
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DimDto {
    d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    factor_dims: Option<Vec<usize>>,
}

impl TryFrom<DimDto> for HilbertDim {
    type Error = OperatorError;
    fn try_from(dto: DimDto) -> Result<Self> {
        HilbertDim::from_parts(dto.d, dto.factor_dims)
    }
}

impl From<HilbertDim> for DimDto {
    fn from(dim: HilbertDim) -> Self {
        DimDto {
            d: dim.d,
            factor_dims: dim.factor_dims,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_and_oversize() {
        assert!(HilbertDim::new(0).is_err());
        assert!(HilbertDim::new(MAX_DIM + 1).is_err());
        assert!(HilbertDim::new(MAX_DIM).is_ok());
    }

    #[test]
    fn factor_product_must_match() {
        assert!(HilbertDim::from_parts(4, Some(vec![2, 2])).is_ok());
        assert!(HilbertDim::from_parts(4, Some(vec![2, 3])).is_err());
        assert!(HilbertDim::with_factors(vec![8, 9]).is_err()); // 72 > cap
    }

    #[test]
    fn tensor_concatenates_factors() {
        let a = HilbertDim::new(2).unwrap();
        let b = HilbertDim::new(3).unwrap();
        let ab = a.tensor(&b).unwrap();
        assert_eq!(ab.size(), 6);
        assert_eq!(ab.factor_dims(), Some(&[2, 3][..]));
    }
}
