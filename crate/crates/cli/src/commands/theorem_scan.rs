use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;

use chsh_engine::generate::random_tensor_scenario;
use chsh_engine::theorem1_check;
use operator_core::StreamRng;

use crate::config::Theorem1ScanConfig;
use crate::report::{render_report, Emission, Report};

#[derive(Serialize)]
struct ScenarioRow {
    index: u64,
    dim_a: usize,
    dim_b: usize,
    norm_ma: f64,
    norm_mb: f64,
    max_bell_norm: f64,
    locally_incompatible: bool,
    violation_exists: bool,
    agree: bool,
}

#[derive(Serialize)]
struct ScanResults {
    n_scenarios: u64,
    agreements: u64,
    violations: u64,
    disagreements: Vec<u64>,
    scenarios: Vec<ScenarioRow>,
}

pub fn run(config: Theorem1ScanConfig) -> Result<Emission> {
    config.validate()?;
    let rows: Vec<ScenarioRow> = (0..config.n_scenarios)
        .into_par_iter()
        .map(|index| -> Result<ScenarioRow> {
            // Each scenario is its own stream: results are independent of
            // the worker count and of every other scenario.
            let mut rng = StreamRng::new(config.seed, index);
            let dim_a = config.local_dims[rng.below(config.local_dims.len() as u64) as usize];
            let dim_b = config.local_dims[rng.below(config.local_dims.len() as u64) as usize];
            let scenario = random_tensor_scenario(dim_a, dim_b, &mut rng)?;
            let outcome = theorem1_check(&scenario)?;
            Ok(ScenarioRow {
                index,
                dim_a,
                dim_b,
                norm_ma: outcome.norm_ma,
                norm_mb: outcome.norm_mb,
                max_bell_norm: outcome.max_bell_norm,
                locally_incompatible: outcome.locally_incompatible,
                violation_exists: outcome.violation_exists,
                agree: outcome.agree,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let agreements = rows.iter().filter(|r| r.agree).count() as u64;
    let violations = rows.iter().filter(|r| r.violation_exists).count() as u64;
    let disagreements: Vec<u64> = rows.iter().filter(|r| !r.agree).map(|r| r.index).collect();
    let passed = disagreements.is_empty();

    let human = format!(
        "theorem1-scan: {agreements}/{} scenarios agree (local incompatibility == violation), \
         {violations} violating -> {}\n",
        config.n_scenarios,
        if passed { "PASS" } else { "FAIL" }
    );

    let mut csv = String::from(
        "index,dim_a,dim_b,norm_ma,norm_mb,max_bell_norm,locally_incompatible,violation_exists,agree\n",
    );
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.index,
            r.dim_a,
            r.dim_b,
            r.norm_ma,
            r.norm_mb,
            r.max_bell_norm,
            r.locally_incompatible,
            r.violation_exists,
            r.agree
        ));
    }

    let results = ScanResults {
        n_scenarios: config.n_scenarios,
        agreements,
        violations,
        disagreements,
        scenarios: rows,
    };
    let json = render_report(&Report {
        command: "theorem1-scan",
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
