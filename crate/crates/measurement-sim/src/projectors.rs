//! Spectral projectors: one orthogonal projector per eigenvalue cluster.

use num_complex::Complex64;

use operator_core::{ComplexMatrix, HermitianOperator};

use crate::error::{MeasurementError, Result};
use crate::tolerance;

pub use crate::tolerance::DEFAULT_VALUE_TOLERANCE;

#[derive(Clone, Debug)]
pub struct ProjectorOutcome {
    pub value: f64,
    pub projector: HermitianOperator,
}

/// An observable together with its resolution of the identity: idempotent,
/// mutually orthogonal projectors summing to I, one per outcome value.
#[derive(Clone, Debug)]
pub struct ProjectorFamily {
    observable: HermitianOperator,
    outcomes: Vec<ProjectorOutcome>,
}

impl ProjectorFamily {
    pub fn observable(&self) -> &HermitianOperator {
        &self.observable
    }

    /// Outcomes in ascending value order.
    pub fn outcomes(&self) -> &[ProjectorOutcome] {
        &self.outcomes
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.outcomes.iter().map(|o| o.value).collect()
    }

    pub fn dim(&self) -> usize {
        self.observable.size()
    }
}

/// Split the spectrum into clusters separated by more than `value_tolerance`
/// and build the orthogonal projector of each cluster. Clusters whose
/// separation is not comfortably larger than their width (gap > 2 x
/// tolerance) are rejected as ambiguous.
pub fn projectors(x: &HermitianOperator, value_tolerance: f64) -> Result<ProjectorFamily> {
    let dec = x.eig()?;
    let d = x.size();
    let eigenvalues = dec.eigenvalues();

    let mut clusters: Vec<(usize, usize)> = Vec::new(); // half-open index ranges
    let mut start = 0usize;
    for k in 1..=d {
        if k == d || eigenvalues[k] - eigenvalues[k - 1] > value_tolerance {
            clusters.push((start, k));
            start = k;
        }
    }
    for pair in clusters.windows(2) {
        let gap = eigenvalues[pair[1].0] - eigenvalues[pair[0].1 - 1];
        if gap <= 2.0 * value_tolerance {
            return Err(MeasurementError::ClusterAmbiguity {
                gap,
                tolerance: value_tolerance,
            });
        }
    }

    let mut outcomes = Vec::with_capacity(clusters.len());
    for (lo, hi) in clusters {
        let members = &dec.eigenvectors()[lo..hi];
        let value = eigenvalues[lo..hi].iter().sum::<f64>() / (hi - lo) as f64;
        let projector = HermitianOperator::from_upper(x.dim().clone(), |i, j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for v in members {
                let amps = v.amplitudes();
                acc += amps[i] * amps[j].conj();
            }
            acc
        });
        outcomes.push(ProjectorOutcome { value, projector });
    }

    let family = ProjectorFamily {
        observable: x.clone(),
        outcomes,
    };
    validate_family(&family)?;
    Ok(family)
}

fn validate_family(family: &ProjectorFamily) -> Result<()> {
    let dim = family.observable.dim().clone();
    let mut sum = ComplexMatrix::zeros(dim.clone());
    let mut reconstruction = ComplexMatrix::zeros(dim.clone());
    for (k, outcome) in family.outcomes.iter().enumerate() {
        let e = &outcome.projector;
        let squared = e.matmul(e)?;
        let idem = HermitianOperator::symmetrized(squared.sub(e.matrix())?)
            .spectral_norm()?;
        if idem > tolerance::FAMILY_TOL {
            return Err(MeasurementError::FamilyInvariant {
                detail: format!("projector {k} is not idempotent: ||E^2 - E|| = {idem:.3e}"),
            });
        }
        for (l, other) in family.outcomes.iter().enumerate().skip(k + 1) {
            let cross = e.matmul(&other.projector)?.frobenius_norm();
            if cross > tolerance::FAMILY_TOL {
                return Err(MeasurementError::FamilyInvariant {
                    detail: format!("projectors {k} and {l} overlap: ||E_k E_l|| = {cross:.3e}"),
                });
            }
        }
        sum = sum.add(e.matrix())?;
        reconstruction = reconstruction.add(&e.matrix().scale_re(outcome.value))?;
    }
    let identity = ComplexMatrix::identity(dim);
    let completeness =
        HermitianOperator::symmetrized(sum.sub(&identity)?).spectral_norm()?;
    if completeness > tolerance::FAMILY_TOL {
        return Err(MeasurementError::FamilyInvariant {
            detail: format!("projectors do not resolve the identity: {completeness:.3e}"),
        });
    }
    let recon_err = HermitianOperator::symmetrized(
        reconstruction.sub(family.observable.matrix())?,
    )
    .spectral_norm()?;
    if recon_err > tolerance::FAMILY_TOL {
        return Err(MeasurementError::FamilyInvariant {
            detail: format!("sum of value x projector misses the observable by {recon_err:.3e}"),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use operator_core::pauli::sigma_z;
    use operator_core::HilbertDim;

    #[test]
    fn sigma_z_splits_into_two_rank_one_projectors() {
        let family = projectors(&sigma_z(), DEFAULT_VALUE_TOLERANCE).unwrap();
        assert_eq!(family.len(), 2);
        assert_eq!(family.values(), vec![-1.0, 1.0]);
        // +1 projector is |e1><e1|.
        let plus = &family.outcomes()[1].projector;
        assert!((plus.matrix().get(0, 0).re - 1.0).abs() < 1e-14);
        assert!(plus.matrix().get(1, 1).norm() < 1e-14);
    }

    #[test]
    fn identity_is_a_single_outcome() {
        let id = HermitianOperator::identity(HilbertDim::new(3).unwrap());
        let family = projectors(&id, DEFAULT_VALUE_TOLERANCE).unwrap();
        assert_eq!(family.len(), 1);
        assert_eq!(family.outcomes()[0].value, 1.0);
    }

    #[test]
    fn lifted_observable_gets_rank_two_projectors() {
        let lifted = sigma_z()
            .tensor(&HermitianOperator::identity(HilbertDim::new(2).unwrap()))
            .unwrap();
        let family = projectors(&lifted, DEFAULT_VALUE_TOLERANCE).unwrap();
        assert_eq!(family.len(), 2);
        for outcome in family.outcomes() {
            assert!((outcome.projector.trace() - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn near_degenerate_clusters_are_ambiguous() {
        let x = operator_core::random::conjugate_diagonal(
            &ComplexMatrix::identity(HilbertDim::new(3).unwrap()),
            &[0.0, 1.5e-8, 1.0],
        );
        assert!(matches!(
            projectors(&x, 1e-8),
            Err(MeasurementError::ClusterAmbiguity { .. })
        ));
    }
}
