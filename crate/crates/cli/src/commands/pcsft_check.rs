use anyhow::Result;
use serde::Serialize;

use pcsft::{
    average_equivalence_check, ensemble_summary, sample_field, CovarianceOperator,
    EnsembleSummary,
};

use crate::config::{PcsftCheckConfig, SourceSpec};
use crate::presets;
use crate::report::{render_report, Emission, Report};

const Z_THRESHOLD: f64 = 5.0;
const UNDER_SAMPLED_N: u64 = 100;

#[derive(Serialize)]
struct ObservableCheck {
    name: String,
    z: f64,
    equivalent: bool,
    pass: bool,
}

#[derive(Serialize)]
struct PcsftResults {
    summary: EnsembleSummary,
    checks: Vec<ObservableCheck>,
    under_sampled: bool,
}

pub fn run(config: PcsftCheckConfig) -> Result<Emission> {
    config.validate()?;
    let covariance: CovarianceOperator = match &config.covariance {
        SourceSpec::Preset(name) => presets::covariance(name, config.dim)?,
        SourceSpec::File(path) => presets::load_covariance_file(path)?,
    };
    let dim = covariance.dim().size();

    let mut observables = Vec::new();
    for source in &config.observables {
        match source {
            SourceSpec::Preset(name) => {
                observables.push((name.clone(), presets::observable(name, dim)?))
            }
            SourceSpec::File(path) => observables.push((
                path.display().to_string(),
                presets::load_operator_file(path)?,
            )),
        }
    }

    let ensemble = sample_field(&covariance, config.seed, config.n)?;
    let summary = ensemble_summary(&ensemble, &observables)?;

    let mut checks = Vec::new();
    let mut passed = true;
    for (line, (_, op)) in summary.observables.iter().zip(&observables) {
        let equivalent = average_equivalence_check(&covariance, op, &ensemble)?;
        let pass = line.z.abs() <= Z_THRESHOLD;
        passed &= pass;
        checks.push(ObservableCheck {
            name: line.name.clone(),
            z: line.z,
            equivalent,
            pass,
        });
    }
    let under_sampled = config.n < UNDER_SAMPLED_N;

    let mut human = format!(
        "pcsft-check: n = {}, Tr B = {:.6}, mean field energy = {:.6}\n",
        config.n, summary.model_trace, summary.mean_energy
    );
    for c in &checks {
        human.push_str(&format!(
            "  {:12} z = {:+.3} -> {}\n",
            c.name,
            c.z,
            if c.pass { "PASS" } else { "FAIL" }
        ));
    }
    if under_sampled {
        human.push_str("  warning: under-sampled ensemble; equivalence checks are weak\n");
    }
    human.push_str(&format!(
        "pcsft-check: {}\n",
        if passed { "PASS" } else { "FAIL" }
    ));

    let mut csv = String::from("observable,empirical,theoretical,stderr,z,pass\n");
    for (line, check) in summary.observables.iter().zip(&checks) {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            line.name, line.empirical, line.theoretical, line.stderr, line.z, check.pass
        ));
    }

    let results = PcsftResults {
        summary,
        checks,
        under_sampled,
    };
    let json = render_report(&Report {
        command: "pcsft-check",
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
