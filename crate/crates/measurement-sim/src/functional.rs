//! Bell-type functionals: linear combinations of cross-group correlations
//! with a classical bound computed by enumerating deterministic outcome
//! assignments. A functional can only be violated when some within-group
//! pair fails to commute; with all observables compatible, a joint
//! distribution exists and the expectation can never beat the bound.

use operator_core::{commutator_norm, ComplexMatrix, DensityOperator};

use crate::error::{MeasurementError, Result};
use crate::projectors::ProjectorFamily;
use crate::tolerance;

/// One term: a coefficient times the correlation of at most one observable
/// per group. Single-factor terms are the "lower order" marginals.
#[derive(Clone, Debug)]
pub struct FunctionalTerm {
    /// (group index, observable index within group), strictly increasing in
    /// the group index.
    pub factors: Vec<(usize, usize)>,
    pub coefficient: f64,
}

impl FunctionalTerm {
    pub fn new(mut factors: Vec<(usize, usize)>, coefficient: f64) -> Self {
        factors.sort_unstable();
        Self {
            factors,
            coefficient,
        }
    }
}

/// A Bell-type inequality: sum of terms compared against the maximum the
/// same expression attains over deterministic assignments of spectrum
/// values to every observable. The bound is computed, never user-supplied.
#[derive(Clone, Debug)]
pub struct BellFunctional {
    /// spectra[k][i] = possible values of observable i in group k, ascending.
    spectra: Vec<Vec<Vec<f64>>>,
    terms: Vec<FunctionalTerm>,
    classical_bound: f64,
}

impl BellFunctional {
    pub fn new(spectra: Vec<Vec<Vec<f64>>>, terms: Vec<FunctionalTerm>) -> Result<Self> {
        if spectra.is_empty() {
            return Err(MeasurementError::InvalidFunctional {
                detail: "at least one group is required".into(),
            });
        }
        for term in &terms {
            if !term.coefficient.is_finite() {
                return Err(MeasurementError::InvalidFunctional {
                    detail: "non-finite coefficient".into(),
                });
            }
            let mut seen_groups = Vec::new();
            for &(group, index) in &term.factors {
                if group >= spectra.len() || index >= spectra[group].len() {
                    return Err(MeasurementError::InvalidFunctional {
                        detail: format!("factor ({group}, {index}) out of range"),
                    });
                }
                if seen_groups.contains(&group) {
                    return Err(MeasurementError::InvalidFunctional {
                        detail: format!("term uses group {group} twice"),
                    });
                }
                seen_groups.push(group);
            }
        }
        let classical_bound = enumerate_bound(&spectra, &terms)?;
        Ok(Self {
            spectra,
            terms,
            classical_bound,
        })
    }

    /// The CHSH functional at the 1/2 normalization: two groups of two ±1
    /// observables, classical bound 1.
    pub fn chsh() -> Self {
        let pm = vec![-1.0, 1.0];
        let spectra = vec![vec![pm.clone(), pm.clone()], vec![pm.clone(), pm]];
        let terms = vec![
            FunctionalTerm::new(vec![(0, 0), (1, 0)], 0.5),
            FunctionalTerm::new(vec![(0, 0), (1, 1)], 0.5),
            FunctionalTerm::new(vec![(0, 1), (1, 0)], 0.5),
            FunctionalTerm::new(vec![(0, 1), (1, 1)], -0.5),
        ];
        Self::new(spectra, terms).expect("static functional is valid")
    }

    /// Three-party Mermin functional XXX - XYY - YXY - YYX; classical bound
    /// 2, quantum maximum 4.
    pub fn mermin3() -> Self {
        let pm = vec![-1.0, 1.0];
        let spectra = vec![
            vec![pm.clone(), pm.clone()],
            vec![pm.clone(), pm.clone()],
            vec![pm.clone(), pm],
        ];
        let terms = vec![
            FunctionalTerm::new(vec![(0, 0), (1, 0), (2, 0)], 1.0),
            FunctionalTerm::new(vec![(0, 0), (1, 1), (2, 1)], -1.0),
            FunctionalTerm::new(vec![(0, 1), (1, 0), (2, 1)], -1.0),
            FunctionalTerm::new(vec![(0, 1), (1, 1), (2, 0)], -1.0),
        ];
        Self::new(spectra, terms).expect("static functional is valid")
    }

    pub fn classical_bound(&self) -> f64 {
        self.classical_bound
    }

    pub fn group_count(&self) -> usize {
        self.spectra.len()
    }

    pub fn group_sizes(&self) -> Vec<usize> {
        self.spectra.iter().map(|g| g.len()).collect()
    }

    pub fn terms(&self) -> &[FunctionalTerm] {
        &self.terms
    }
}

/// Max over deterministic assignments, enumerated over the observables that
/// actually appear in some term.
fn enumerate_bound(spectra: &[Vec<Vec<f64>>], terms: &[FunctionalTerm]) -> Result<f64> {
    let mut used: Vec<(usize, usize)> = terms
        .iter()
        .flat_map(|t| t.factors.iter().copied())
        .collect();
    used.sort_unstable();
    used.dedup();

    let count: u128 = used
        .iter()
        .map(|&(g, i)| spectra[g][i].len() as u128)
        .product();
    if count > tolerance::ASSIGNMENT_CAP {
        return Err(MeasurementError::AssignmentCapExceeded {
            count,
            cap: tolerance::ASSIGNMENT_CAP,
        });
    }

    let mut bound = if used.is_empty() {
        // constant functional: value of the empty product terms
        terms.iter().map(|t| t.coefficient).sum::<f64>()
    } else {
        f64::NEG_INFINITY
    };
    let mut digits = vec![0usize; used.len()];
    if !used.is_empty() {
        loop {
            let mut value = 0.0;
            for term in terms {
                let mut product = term.coefficient;
                for factor in &term.factors {
                    let slot = used.binary_search(factor).expect("factor is in used set");
                    product *= spectra[factor.0][factor.1][digits[slot]];
                }
                value += product;
            }
            bound = bound.max(value);

            let mut pos = used.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                digits[pos] += 1;
                let (g, i) = used[pos];
                if digits[pos] < spectra[g][i].len() {
                    break;
                }
                digits[pos] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    Ok(bound)
}

#[derive(Clone, Debug)]
pub struct FunctionalEvaluation {
    pub value: f64,
    pub classical_bound: f64,
    pub violated: bool,
}

/// Evaluate a functional on per-group projector families and a state.
///
/// Requires cross-group compatibility (observables of different groups
/// commute) and that every family's outcome values appear in the declared
/// spectrum of its slot — the enumerated bound then majorizes every
/// deterministic assignment the families can realize.
pub fn evaluate_bell_functional(
    functional: &BellFunctional,
    families: &[Vec<ProjectorFamily>],
    rho: &DensityOperator,
) -> Result<FunctionalEvaluation> {
    if families.len() != functional.group_count() {
        return Err(MeasurementError::InvalidFunctional {
            detail: format!(
                "expected {} groups, got {}",
                functional.group_count(),
                families.len()
            ),
        });
    }
    for (k, group) in families.iter().enumerate() {
        if group.len() != functional.spectra[k].len() {
            return Err(MeasurementError::InvalidFunctional {
                detail: format!(
                    "group {k} declares {} observables, got {}",
                    functional.spectra[k].len(),
                    group.len()
                ),
            });
        }
        for (i, family) in group.iter().enumerate() {
            for value in family.values() {
                let declared = &functional.spectra[k][i];
                if !declared
                    .iter()
                    .any(|v| (v - value).abs() <= tolerance::SPECTRUM_MATCH_TOL)
                {
                    return Err(MeasurementError::SpectraMismatch {
                        group: k,
                        index: i,
                        detail: format!("outcome value {value} not in {declared:?}"),
                    });
                }
            }
        }
    }

    // Cross-group compatibility.
    for ka in 0..families.len() {
        for kb in (ka + 1)..families.len() {
            for fa in &families[ka] {
                for fb in &families[kb] {
                    let norm = commutator_norm(fa.observable(), fb.observable())?;
                    if norm > tolerance::JPD_COMMUTATION_TOL {
                        return Err(MeasurementError::CrossGroupCommutation {
                            group_a: ka,
                            group_b: kb,
                            norm,
                        });
                    }
                }
            }
        }
    }

    let mut value = 0.0;
    for term in &functional.terms {
        if term.factors.is_empty() {
            value += term.coefficient;
            continue;
        }
        let mut product: Option<ComplexMatrix> = None;
        for &(group, index) in &term.factors {
            let obs = families[group][index].observable().matrix();
            product = Some(match product {
                None => obs.clone(),
                Some(acc) => acc.matmul(obs)?,
            });
        }
        let product = product.expect("nonempty factors");
        let t = rho.operator().trace_product(&product)?;
        let allowed = 1e-8 * (1.0 + product.frobenius_norm());
        if t.im.abs() > allowed {
            return Err(MeasurementError::ImplausibleStatistics {
                detail: format!("correlation has imaginary part {:.3e}", t.im),
            });
        }
        value += term.coefficient * t.re;
    }

    Ok(FunctionalEvaluation {
        value,
        classical_bound: functional.classical_bound,
        violated: value > functional.classical_bound + tolerance::FUNCTIONAL_VIOLATION_MARGIN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chsh_bound_is_one() {
        assert_eq!(BellFunctional::chsh().classical_bound(), 1.0);
    }

    #[test]
    fn mermin_bound_is_two() {
        assert_eq!(BellFunctional::mermin3().classical_bound(), 2.0);
    }

    #[test]
    fn empty_coefficients_give_zero_bound() {
        let pm = vec![-1.0, 1.0];
        let f = BellFunctional::new(vec![vec![pm.clone()], vec![pm]], vec![]).unwrap();
        assert_eq!(f.classical_bound(), 0.0);
    }

    #[test]
    fn lower_order_terms_shift_the_bound() {
        let pm = vec![-1.0, 1.0];
        let f = BellFunctional::new(
            vec![vec![pm.clone()], vec![pm]],
            vec![
                FunctionalTerm::new(vec![(0, 0), (1, 0)], 1.0),
                FunctionalTerm::new(vec![(0, 0)], 0.5),
            ],
        )
        .unwrap();
        // max over a, b of ab + a/2 = 1.5.
        assert_eq!(f.classical_bound(), 1.5);
    }

    #[test]
    fn duplicate_group_in_a_term_is_invalid() {
        let pm = vec![-1.0, 1.0];
        let bad = BellFunctional::new(
            vec![vec![pm.clone(), pm]],
            vec![FunctionalTerm::new(vec![(0, 0), (0, 1)], 1.0)],
        );
        assert!(matches!(
            bad,
            Err(MeasurementError::InvalidFunctional { .. })
        ));
    }
}
