//! Seeded ensembles of commuting observable families for the joint-table
//! and functional scans. Commutation comes from sharing one Haar eigenframe.

use operator_core::random::{conjugate_diagonal, haar_unitary};
use operator_core::{HermitianOperator, StreamRng};

use crate::error::Result;
use crate::projectors::{projectors, ProjectorFamily, DEFAULT_VALUE_TOLERANCE};

/// Integer-valued spectra keep the clusters unambiguous.
const VALUE_POOL: [f64; 4] = [-1.0, 0.0, 1.0, 2.0];

/// `m` pairwise-commuting observables on dimension `d`, each with two or
/// three well-separated outcome values.
pub fn random_commuting_families(
    m: usize,
    d: usize,
    rng: &mut StreamRng,
) -> Result<Vec<ProjectorFamily>> {
    let frame = haar_unitary(d, rng)?;
    let mut families = Vec::with_capacity(m);
    for _ in 0..m {
        let outcome_count = 2 + rng.below(2) as usize;
        let mut chosen = Vec::with_capacity(outcome_count);
        while chosen.len() < outcome_count {
            let v = VALUE_POOL[rng.below(VALUE_POOL.len() as u64) as usize];
            if !chosen.contains(&v) {
                chosen.push(v);
            }
        }
        // Every chosen value appears at least once so the cluster count is
        // exactly outcome_count.
        let mut diagonal: Vec<f64> = (0..d)
            .map(|_| chosen[rng.below(chosen.len() as u64) as usize])
            .collect();
        for (k, v) in chosen.iter().enumerate() {
            if k < d {
                diagonal[k] = *v;
            }
        }
        let observable = conjugate_diagonal(&frame, &diagonal);
        families.push(projectors(&observable, DEFAULT_VALUE_TOLERANCE)?);
    }
    Ok(families)
}

/// Grouped dichotomic observables that all commute, within and across
/// groups: every value is a function of one shared frame. No Bell-type
/// functional can be violated on these.
pub fn random_all_commuting_groups(
    group_sizes: &[usize],
    d: usize,
    rng: &mut StreamRng,
) -> Result<Vec<Vec<ProjectorFamily>>> {
    let frame = haar_unitary(d, rng)?;
    let mut groups = Vec::with_capacity(group_sizes.len());
    for &size in group_sizes {
        let mut group = Vec::with_capacity(size);
        for _ in 0..size {
            let diagonal: Vec<f64> = (0..d).map(|_| rng.sign()).collect();
            let observable: HermitianOperator = conjugate_diagonal(&frame, &diagonal);
            group.push(projectors(&observable, DEFAULT_VALUE_TOLERANCE)?);
        }
        groups.push(group);
    }
    Ok(groups)
}
