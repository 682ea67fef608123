use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;

use measurement_sim::generate::random_commuting_families;
use measurement_sim::{evaluate_bell_functional, pairwise_implies_multiple_check};
use operator_core::random::random_density;
use operator_core::{DensityOperator, StreamRng};

use crate::config::JpdCheckConfig;
use crate::presets;
use crate::report::{render_report, Emission, Report};

#[derive(Serialize)]
struct FamilyRow {
    index: u64,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostic: Option<String>,
}

#[derive(Serialize)]
struct FunctionalReport {
    name: String,
    value: f64,
    classical_bound: f64,
    violated: bool,
}

#[derive(Serialize)]
struct JpdResults {
    n_families: u64,
    passes: u64,
    failures: Vec<u64>,
    families: Vec<FamilyRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    functional: Option<FunctionalReport>,
}

pub fn run(config: JpdCheckConfig) -> Result<Emission> {
    config.validate()?;
    let rows: Vec<FamilyRow> = (0..config.n_families)
        .into_par_iter()
        .map(|index| -> Result<FamilyRow> {
            let mut rng = StreamRng::new(config.seed, index);
            let families = random_commuting_families(config.m, config.dim, &mut rng)?;
            let rho: DensityOperator = random_density(config.dim, &mut rng)?;
            let check = pairwise_implies_multiple_check(&families, &rho)?;
            Ok(FamilyRow {
                index,
                ok: check.ok,
                diagnostic: check.diagnostic,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let passes = rows.iter().filter(|r| r.ok).count() as u64;
    let failures: Vec<u64> = rows.iter().filter(|r| !r.ok).map(|r| r.index).collect();
    let passed = failures.is_empty();

    let functional = match &config.functional {
        Some(spec) => {
            let (functional, groups, state) = presets::functional_groups(&spec.name)?;
            let rho = DensityOperator::from_pure(&state);
            let eval = evaluate_bell_functional(&functional, &groups, &rho)?;
            Some(FunctionalReport {
                name: spec.name.clone(),
                value: eval.value,
                classical_bound: eval.classical_bound,
                violated: eval.violated,
            })
        }
        None => None,
    };

    let mut human = format!(
        "jpd-check: {passes}/{} commuting families have permutation-invariant, nonnegative \
         joint tables -> {}\n",
        config.n_families,
        if passed { "PASS" } else { "FAIL" }
    );
    if let Some(f) = &functional {
        human.push_str(&format!(
            "  functional '{}': value = {:.6}, classical bound = {:.3}, violated = {}\n",
            f.name, f.value, f.classical_bound, f.violated
        ));
    }

    let mut csv = String::from("index,ok\n");
    for r in &rows {
        csv.push_str(&format!("{},{}\n", r.index, r.ok));
    }

    let results = JpdResults {
        n_families: config.n_families,
        passes,
        failures,
        families: rows,
        functional,
    };
    let json = render_report(&Report {
        command: "jpd-check",
        config,
        results,
        passed,
    })?;
    Ok(Emission {
        json,
        csv: Some(csv),
        human,
        passed,
    })
}
