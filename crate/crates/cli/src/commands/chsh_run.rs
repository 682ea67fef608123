use anyhow::{anyhow, Result};
use serde::Serialize;

use chsh_engine::{extract_incompatibility, ChshError};
use measurement_sim::{experiment_csv, run_chsh_experiment, ExperimentRun};
use operator_core::commutator_norm;

use crate::commands::{resolve_scenario, resolve_state};
use crate::config::ChshRunConfig;
use crate::report::{render_report, Emission, Report};

/// Rounds below this get an explicit under-sampled warning.
const UNDER_SAMPLED_ROUNDS: u64 = 100;

#[derive(Serialize)]
struct ChshRunResults {
    experiment: ExperimentRun,
    /// ||[B1, B2]|| of the auxiliary pair (local operators when available).
    norm_mb: f64,
    /// ||[A1, A2]|| recovered from the observed correlation via
    /// 4(b² - 1)/||M_B||; absent when the B pair is compatible.
    extracted_norm_ma: Option<f64>,
    /// The directly computed ||[A1, A2]|| for comparison.
    true_norm_ma: f64,
    extraction_error: Option<f64>,
    /// True when the raw |estimate| fell below the classical bound and was
    /// clamped before extraction.
    clamped: bool,
    under_sampled: bool,
}

pub fn run(config: ChshRunConfig) -> Result<Emission> {
    config.validate()?;
    let scenario = resolve_scenario(&config.scenario)?;
    let psi = resolve_state(&config.state)?;
    let experiment = run_chsh_experiment(&scenario, &psi, config.rounds_per_setting, config.seed)?;

    let (a1, a2, b1, b2) = match scenario.local() {
        Some(local) => (&local.a1, &local.a2, &local.b1, &local.b2),
        None => (scenario.a1(), scenario.a2(), scenario.b1(), scenario.b2()),
    };
    let norm_mb = commutator_norm(b1.operator(), b2.operator())?;
    let true_norm_ma = commutator_norm(a1.operator(), a2.operator())?;

    let b_observed = experiment.chsh_estimate.abs();
    let clamped = b_observed < 1.0;
    let extracted_norm_ma = match extract_incompatibility(b_observed, norm_mb) {
        Ok(value) => Some(value),
        Err(ChshError::AuxiliaryPairCompatible { .. }) => None,
        Err(e) => return Err(anyhow!(e)),
    };
    let extraction_error = extracted_norm_ma.map(|v| (v - true_norm_ma).abs());
    let under_sampled = config.rounds_per_setting < UNDER_SAMPLED_ROUNDS;

    let mut human = format!(
        "chsh-run: <B> = {:.6} ± {:.6} (z = {:.2}, violation {}), S = {:.6}\n",
        experiment.chsh_estimate,
        experiment.chsh_stderr,
        experiment.violation_z,
        if experiment.violation_observed {
            "observed"
        } else {
            "not observed"
        },
        experiment.chsh_conventional,
    );
    match extracted_norm_ma {
        Some(value) => human.push_str(&format!(
            "  meter: ||[A1,A2]|| extracted = {:.6}{} (true {:.6}, ||[B1,B2]|| = {:.6})\n",
            value,
            if clamped { " [clamped]" } else { "" },
            true_norm_ma,
            norm_mb
        )),
        None => human.push_str(
            "  meter: auxiliary B pair is compatible; incompatibility extraction unavailable\n",
        ),
    }
    if under_sampled {
        human.push_str("  warning: under-sampled run; standard errors are wide\n");
    }

    let csv = experiment_csv(&experiment);
    let results = ChshRunResults {
        experiment,
        norm_mb,
        extracted_norm_ma,
        true_norm_ma,
        extraction_error,
        clamped,
        under_sampled,
    };
    let json = render_report(&Report {
        command: "chsh-run",
        config,
        results,
        passed: true,
    })?;
    Ok(Emission {
        json,
        csv: Some(csv),
        human,
        passed: true,
    })
}
