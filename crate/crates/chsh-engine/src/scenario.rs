use serde::{Deserialize, Serialize};

use operator_core::{
    commutator_norm, ComplexMatrix, HermitianOperator, HilbertDim,
};

use crate::error::{ChshError, Result};
use crate::tolerance;

/// An observable taking values ±1: its operator squares to the identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HermitianOperator", into = "HermitianOperator")]
pub struct DichotomicObservable {
    operator: HermitianOperator,
}

impl DichotomicObservable {
    pub fn new(operator: HermitianOperator) -> Result<Self> {
        let squared = operator.matmul(&operator)?;
        let identity = ComplexMatrix::identity(operator.dim().clone());
        let diff = squared.sub(&identity)?;
        let defect = HermitianOperator::symmetrized(diff).spectral_norm()?;
        if defect > tolerance::DICHOTOMIC_TOL {
            return Err(ChshError::NotDichotomic {
                defect,
                tolerance: tolerance::DICHOTOMIC_TOL,
            });
        }
        Ok(Self { operator })
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.operator
    }

    pub fn dim(&self) -> &HilbertDim {
        self.operator.dim()
    }

    pub fn size(&self) -> usize {
        self.operator.size()
    }
}

impl TryFrom<HermitianOperator> for DichotomicObservable {
    type Error = ChshError;
    fn try_from(op: HermitianOperator) -> Result<Self> {
        DichotomicObservable::new(op)
    }
}

impl From<DichotomicObservable> for HermitianOperator {
    fn from(obs: DichotomicObservable) -> Self {
        obs.operator
    }
}

/// Which of the two B-orderings a bound or witness refers to. Interchanging
/// B1 and B2 negates M_B = i[B1, B2] and flips the sign of the second
/// bracket of the Bell operator; predicates evaluate both orderings and
/// record which one they selected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BOrdering {
    Original,
    Swapped,
}

/// Local observables of a tensor-structured scenario, acting on the factors.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalOperators {
    pub a1: DichotomicObservable,
    pub a2: DichotomicObservable,
    pub b1: DichotomicObservable,
    pub b2: DichotomicObservable,
}

#[derive(Clone, Debug)]
pub enum Structure {
    General,
    Tensor { dim_a: usize, dim_b: usize },
}

/// A validated quadruple (A1, A2, B1, B2) of dichotomic observables with
/// compatible cross pairs: ||[A_i, B_j]|| vanishes within tolerance for all
/// four pairs. Optionally tagged with the tensor-factor structure
/// A_i = a_i ⊗ I, B_j = I ⊗ b_j.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "ScenarioDto", into = "ScenarioDto")]
pub struct BellScenario {
    a1: DichotomicObservable,
    a2: DichotomicObservable,
    b1: DichotomicObservable,
    b2: DichotomicObservable,
    structure: Structure,
    local: Option<LocalOperators>,
}

impl BellScenario {
    /// Scenario without tensor structure; only cross-compatibility is required.
    pub fn general(
        a1: DichotomicObservable,
        a2: DichotomicObservable,
        b1: DichotomicObservable,
        b2: DichotomicObservable,
    ) -> Result<Self> {
        let s = Self {
            a1,
            a2,
            b1,
            b2,
            structure: Structure::General,
            local: None,
        };
        s.validate_cross_commutation()?;
        Ok(s)
    }

    /// Compound-system scenario: locals a_i act on the A factor, b_j on the
    /// B factor; globals are the lifts a_i ⊗ I and I ⊗ b_j.
    pub fn tensor(
        a1: DichotomicObservable,
        a2: DichotomicObservable,
        b1: DichotomicObservable,
        b2: DichotomicObservable,
    ) -> Result<Self> {
        let dim_a = a1.size();
        let dim_b = b1.size();
        if a2.size() != dim_a || b2.size() != dim_b {
            return Err(ChshError::LocalDimensionMismatch {
                got_a: a2.size(),
                got_b: b2.size(),
                dim_a,
                dim_b,
            });
        }
        let id_a = HermitianOperator::identity(HilbertDim::new(dim_a)?);
        let id_b = HermitianOperator::identity(HilbertDim::new(dim_b)?);
        let lift_a = |x: &DichotomicObservable| -> Result<DichotomicObservable> {
            DichotomicObservable::new(x.operator().tensor(&id_b)?)
        };
        let lift_b = |x: &DichotomicObservable| -> Result<DichotomicObservable> {
            DichotomicObservable::new(id_a.tensor(x.operator())?)
        };
        let s = Self {
            a1: lift_a(&a1)?,
            a2: lift_a(&a2)?,
            b1: lift_b(&b1)?,
            b2: lift_b(&b2)?,
            structure: Structure::Tensor { dim_a, dim_b },
            local: Some(LocalOperators { a1, a2, b1, b2 }),
        };
        s.validate_cross_commutation()?;
        Ok(s)
    }

    fn validate_cross_commutation(&self) -> Result<()> {
        let pairs = [
            (1usize, 1usize, &self.a1, &self.b1),
            (1, 2, &self.a1, &self.b2),
            (2, 1, &self.a2, &self.b1),
            (2, 2, &self.a2, &self.b2),
        ];
        for (ai, bj, a, b) in pairs {
            if a.size() != b.size() {
                return Err(ChshError::DimensionMismatch {
                    left: a.size(),
                    right: b.size(),
                });
            }
            let norm = commutator_norm(a.operator(), b.operator())?;
            if norm > tolerance::CROSS_COMMUTATION_TOL {
                return Err(ChshError::CrossCommutation {
                    a_index: ai,
                    b_index: bj,
                    norm,
                });
            }
        }
        Ok(())
    }

    /// Check stored globals against the lifts of the stored locals.
    fn validate_lift_agreement(&self) -> Result<()> {
        let (local, (dim_a, dim_b)) = match (&self.local, &self.structure) {
            (Some(local), Structure::Tensor { dim_a, dim_b }) => (local, (*dim_a, *dim_b)),
            (None, Structure::General) => return Ok(()),
            _ => return Err(ChshError::InconsistentStructure),
        };
        if local.a1.size() != dim_a || local.b1.size() != dim_b {
            return Err(ChshError::LocalDimensionMismatch {
                got_a: local.a1.size(),
                got_b: local.b1.size(),
                dim_a,
                dim_b,
            });
        }
        let id_a = HermitianOperator::identity(HilbertDim::new(dim_a)?);
        let id_b = HermitianOperator::identity(HilbertDim::new(dim_b)?);
        let checks = [
            (local.a1.operator().tensor(&id_b)?, &self.a1),
            (local.a2.operator().tensor(&id_b)?, &self.a2),
            (id_a.tensor(local.b1.operator())?, &self.b1),
            (id_a.tensor(local.b2.operator())?, &self.b2),
        ];
        for (lifted, stored) in checks {
            let diff = lifted.matrix().max_abs_diff(stored.operator().matrix());
            if diff > tolerance::LIFT_REPRODUCTION_TOL {
                return Err(ChshError::LiftMismatch { diff });
            }
        }
        Ok(())
    }

    pub fn a1(&self) -> &DichotomicObservable {
        &self.a1
    }

    pub fn a2(&self) -> &DichotomicObservable {
        &self.a2
    }

    pub fn b1(&self) -> &DichotomicObservable {
        &self.b1
    }

    pub fn b2(&self) -> &DichotomicObservable {
        &self.b2
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn local(&self) -> Option<&LocalOperators> {
        self.local.as_ref()
    }

    pub fn is_tensor(&self) -> bool {
        matches!(self.structure, Structure::Tensor { .. })
    }

    pub fn dim(&self) -> &HilbertDim {
        self.a1.dim()
    }

    pub fn size(&self) -> usize {
        self.a1.size()
    }

    /// The scenario with B1 and B2 interchanged (locals included).
    pub fn swapped_b(&self) -> Self {
        Self {
            a1: self.a1.clone(),
            a2: self.a2.clone(),
            b1: self.b2.clone(),
            b2: self.b1.clone(),
            structure: self.structure.clone(),
            local: self.local.as_ref().map(|l| LocalOperators {
                a1: l.a1.clone(),
                a2: l.a2.clone(),
                b1: l.b2.clone(),
                b2: l.b1.clone(),
            }),
        }
    }

    pub fn with_ordering(&self, ordering: BOrdering) -> Self {
        match ordering {
            BOrdering::Original => self.clone(),
            BOrdering::Swapped => self.swapped_b(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDto {
    a1: HermitianOperator,
    a2: HermitianOperator,
    b1: HermitianOperator,
    b2: HermitianOperator,
    structure: StructureDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    local: Option<LocalOperators>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum StructureDto {
    General,
    Tensor([usize; 2]),
}

impl TryFrom<ScenarioDto> for BellScenario {
    type Error = ChshError;

    fn try_from(dto: ScenarioDto) -> Result<Self> {
        let structure = match dto.structure {
            StructureDto::General => Structure::General,
            StructureDto::Tensor([dim_a, dim_b]) => Structure::Tensor { dim_a, dim_b },
        };
        let s = BellScenario {
            a1: DichotomicObservable::new(dto.a1)?,
            a2: DichotomicObservable::new(dto.a2)?,
            b1: DichotomicObservable::new(dto.b1)?,
            b2: DichotomicObservable::new(dto.b2)?,
            structure,
            local: dto.local,
        };
        s.validate_lift_agreement()?;
        s.validate_cross_commutation()?;
        Ok(s)
    }
}

impl From<BellScenario> for ScenarioDto {
    fn from(s: BellScenario) -> Self {
        let structure = match s.structure {
            Structure::General => StructureDto::General,
            Structure::Tensor { dim_a, dim_b } => StructureDto::Tensor([dim_a, dim_b]),
        };
        ScenarioDto {
            a1: s.a1.operator().clone(),
            a2: s.a2.operator().clone(),
            b1: s.b1.operator().clone(),
            b2: s.b2.operator().clone(),
            structure,
            local: s.local,
        }
    }
}
