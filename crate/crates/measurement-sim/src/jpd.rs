//! Joint probability tables for pairwise-commuting observables:
//! p(x1, ..., xm) = Tr[ρ E1(x1) ··· Em(xm)].
//!
//! Pairwise compatibility implies joint measurability of the whole family;
//! numerically this shows up as permutation invariance and nonnegativity of
//! the m-fold table, which [`pairwise_implies_multiple_check`] verifies.

use std::collections::BTreeMap;

use operator_core::{commutator_norm, ComplexMatrix, DensityOperator};

use crate::error::{MeasurementError, Result};
use crate::projectors::ProjectorFamily;
use crate::tolerance;

/// Probability table over outcome index tuples of an ordered family list.
#[derive(Clone, Debug)]
pub struct JointDistribution {
    families: Vec<ProjectorFamily>,
    table: BTreeMap<Vec<usize>, f64>,
}

impl JointDistribution {
    pub fn families(&self) -> &[ProjectorFamily] {
        &self.families
    }

    /// Outcome-index tuples mapped to probabilities, in lexicographic order.
    pub fn table(&self) -> &BTreeMap<Vec<usize>, f64> {
        &self.table
    }

    /// Outcome values for a given index tuple.
    pub fn values_at(&self, key: &[usize]) -> Vec<f64> {
        key.iter()
            .zip(&self.families)
            .map(|(&k, family)| family.outcomes()[k].value)
            .collect()
    }

    /// E[prod of outcome values].
    pub fn product_expectation(&self) -> f64 {
        self.table
            .iter()
            .map(|(key, p)| p * self.values_at(key).iter().product::<f64>())
            .sum()
    }

    /// E[(prod of outcome values)^2].
    pub fn product_second_moment(&self) -> f64 {
        self.table
            .iter()
            .map(|(key, p)| {
                let v: f64 = self.values_at(key).iter().product();
                p * v * v
            })
            .sum()
    }

    /// Marginal table over a subset of the families (by position).
    pub fn marginal(&self, keep: &[usize]) -> BTreeMap<Vec<usize>, f64> {
        let mut out: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for (key, p) in &self.table {
            let reduced: Vec<usize> = keep.iter().map(|&k| key[k]).collect();
            *out.entry(reduced).or_insert(0.0) += p;
        }
        out
    }
}

/// Build the jpd of pairwise-commuting observables for a state ρ.
///
/// Non-commuting inputs are a hard error: quantum mechanics defines no joint
/// distribution for incompatible observables, and silently approximating one
/// would bury exactly the distinction this crate exists to keep sharp.
pub fn joint_distribution(
    families: &[ProjectorFamily],
    rho: &DensityOperator,
) -> Result<JointDistribution> {
    validate_commuting(families, rho)?;
    let table = table_in_order(families, rho, &identity_order(families.len()))?;
    Ok(JointDistribution {
        families: families.to_vec(),
        table,
    })
}

/// Report of the pairwise-implies-multiple check; `ok` is the verdict and
/// the diagnostic names the first failing permutation or marginal.
#[derive(Clone, Debug)]
pub struct CompatibilityCheck {
    pub ok: bool,
    pub diagnostic: Option<String>,
}

/// Verify that the m-fold table is permutation-invariant and nonnegative and
/// that every bivariate marginal reproduces the direct pair table.
pub fn pairwise_implies_multiple_check(
    families: &[ProjectorFamily],
    rho: &DensityOperator,
) -> Result<CompatibilityCheck> {
    let m = families.len();
    let reference = joint_distribution(families, rho)?;

    for order in permutations(m) {
        let permuted = match table_in_order(families, rho, &order) {
            Ok(t) => t,
            Err(MeasurementError::NegativeProbability { key, value }) => {
                return Ok(CompatibilityCheck {
                    ok: false,
                    diagnostic: Some(format!(
                        "order {order:?}: probability {value:.3e} at {key:?}"
                    )),
                })
            }
            Err(e) => return Err(e),
        };
        for (key, p) in &permuted {
            let reference_p = reference.table()[key];
            if (p - reference_p).abs() > tolerance::PERMUTATION_TOL {
                return Ok(CompatibilityCheck {
                    ok: false,
                    diagnostic: Some(format!(
                        "order {order:?} disagrees at {key:?}: {p} vs {reference_p}"
                    )),
                });
            }
        }
    }

    for i in 0..m {
        for j in (i + 1)..m {
            let marginal = reference.marginal(&[i, j]);
            let direct = joint_distribution(&[families[i].clone(), families[j].clone()], rho)?;
            for (key, p) in direct.table() {
                let lifted = marginal.get(key).copied().unwrap_or(0.0);
                if (p - lifted).abs() > tolerance::MARGINAL_TOL {
                    return Ok(CompatibilityCheck {
                        ok: false,
                        diagnostic: Some(format!(
                            "marginal ({i}, {j}) at {key:?}: {lifted} vs direct {p}"
                        )),
                    });
                }
            }
        }
    }

    Ok(CompatibilityCheck {
        ok: true,
        diagnostic: None,
    })
}

fn validate_commuting(families: &[ProjectorFamily], rho: &DensityOperator) -> Result<()> {
    for family in families {
        if family.dim() != rho.dim().size() {
            return Err(MeasurementError::DimensionMismatch {
                left: family.dim(),
                right: rho.dim().size(),
            });
        }
    }
    let size: usize = families.iter().map(|f| f.len()).product();
    if size > tolerance::TABLE_CAP {
        return Err(MeasurementError::TableTooLarge {
            size,
            cap: tolerance::TABLE_CAP,
        });
    }
    for i in 0..families.len() {
        for j in (i + 1)..families.len() {
            let norm = commutator_norm(families[i].observable(), families[j].observable())?;
            if norm > tolerance::JPD_COMMUTATION_TOL {
                return Err(MeasurementError::NonCommutingObservables {
                    first: i,
                    second: j,
                    norm,
                });
            }
        }
    }
    Ok(())
}

/// Build the table with projector products taken in `order`; keys stay in
/// the original family positions so tables for different orders compare
/// entry-by-entry.
fn table_in_order(
    families: &[ProjectorFamily],
    rho: &DensityOperator,
    order: &[usize],
) -> Result<BTreeMap<Vec<usize>, f64>> {
    let m = families.len();
    let mut table = BTreeMap::new();
    let mut key = vec![0usize; m];
    let mut total = 0.0f64;
    loop {
        let mut product: Option<ComplexMatrix> = None;
        for &f in order {
            let e = families[f].outcomes()[key[f]].projector.matrix();
            product = Some(match product {
                None => e.clone(),
                Some(acc) => acc.matmul(e)?,
            });
        }
        let product = product.expect("at least one family");
        let t = rho.operator().trace_product(&product)?;
        if t.im.abs() > tolerance::JPD_IMAG_TOL {
            return Err(MeasurementError::ImaginaryProbability {
                key: key.clone(),
                imag: t.im.abs(),
            });
        }
        if t.re < tolerance::JPD_NEGATIVE_FLOOR {
            return Err(MeasurementError::NegativeProbability {
                key: key.clone(),
                value: t.re,
            });
        }
        let p = t.re.max(0.0);
        total += p;
        table.insert(key.clone(), p);

        // odometer over outcome indices
        let mut pos = m;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            key[pos] += 1;
            if key[pos] < families[pos].len() {
                break;
            }
            key[pos] = 0;
        }
        if key.iter().all(|&k| k == 0) {
            break;
        }
    }
    if (total - 1.0).abs() > tolerance::JPD_TOTAL_TOL {
        return Err(MeasurementError::TotalProbabilityOff { total });
    }
    Ok(table)
}

fn identity_order(m: usize) -> Vec<usize> {
    (0..m).collect()
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..m).collect();
    heap_permute(&mut items, m, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projectors::{projectors, DEFAULT_VALUE_TOLERANCE};
    use chsh_engine::states::singlet;
    use operator_core::pauli::{sigma_x, sigma_z};
    use operator_core::{HermitianOperator, HilbertDim};

    fn lifted_pair() -> (ProjectorFamily, ProjectorFamily) {
        let id = HermitianOperator::identity(HilbertDim::new(2).unwrap());
        let a = sigma_z().tensor(&id).unwrap();
        let b = id.tensor(&sigma_z()).unwrap();
        (
            projectors(&a, DEFAULT_VALUE_TOLERANCE).unwrap(),
            projectors(&b, DEFAULT_VALUE_TOLERANCE).unwrap(),
        )
    }

    #[test]
    fn singlet_is_perfectly_anticorrelated() {
        let (fa, fb) = lifted_pair();
        let rho = operator_core::DensityOperator::from_pure(&singlet().unwrap());
        let jd = joint_distribution(&[fa, fb], &rho).unwrap();
        // Outcome order is ascending: index 0 is value -1, index 1 is +1.
        assert!((jd.table()[&vec![0, 1]] - 0.5).abs() < 1e-12);
        assert!((jd.table()[&vec![1, 0]] - 0.5).abs() < 1e-12);
        assert!(jd.table()[&vec![0, 0]].abs() < 1e-12);
        assert!(jd.table()[&vec![1, 1]].abs() < 1e-12);
        assert!((jd.product_expectation() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_identity_observable_is_certain() {
        let id = HermitianOperator::identity(HilbertDim::new(3).unwrap());
        let family = projectors(&id, DEFAULT_VALUE_TOLERANCE).unwrap();
        let mut rng = operator_core::StreamRng::new(5, 0);
        let rho = operator_core::random::random_density(3, &mut rng).unwrap();
        let jd = joint_distribution(&[family], &rho).unwrap();
        assert_eq!(jd.table().len(), 1);
        assert!((jd.table()[&vec![0]] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn incompatible_observables_are_refused() {
        let fa = projectors(&sigma_z(), DEFAULT_VALUE_TOLERANCE).unwrap();
        let fb = projectors(&sigma_x(), DEFAULT_VALUE_TOLERANCE).unwrap();
        let rho = operator_core::DensityOperator::maximally_mixed(HilbertDim::new(2).unwrap());
        assert!(matches!(
            joint_distribution(&[fa, fb], &rho),
            Err(MeasurementError::NonCommutingObservables { .. })
        ));
    }
}
