//! The four-setting CHSH experiment: per-setting joint tables, independent
//! seeded sampling, correlation estimates with propagated standard errors,
//! and the violation z-score.

use serde::Serialize;

use chsh_engine::BellScenario;
use operator_core::{CounterRng, DensityOperator, PureState};

use crate::error::{MeasurementError, Result};
use crate::jpd::joint_distribution;
use crate::projectors::{projectors, DEFAULT_VALUE_TOLERANCE};
use crate::sampling::{sample_joint_keyed, OutcomeTallies};

/// Discovery-grade convention: a violation counts as observed at z >= 5.
pub const VIOLATION_Z_THRESHOLD: f64 = 5.0;

/// State echoed into a run record.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StateEcho {
    Pure(PureState),
    Mixed(DensityOperator),
}

#[derive(Clone, Debug, Serialize)]
pub struct OutcomeCell {
    pub a_value: f64,
    pub b_value: f64,
    pub count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SettingResult {
    /// "A1B1" .. "A2B2".
    pub setting: String,
    pub a_index: usize,
    pub b_index: usize,
    pub cells: Vec<OutcomeCell>,
    /// Sample mean of the outcome product.
    pub estimate: f64,
    pub stderr: f64,
}

/// Seeded Monte Carlo Bell-test record; bit-exact reruns from (seed, config)
/// are a supported contract.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentRun {
    pub seed: u64,
    pub rounds_per_setting: u64,
    pub state: StateEcho,
    pub settings: Vec<SettingResult>,
    /// (1/2)[c11 + c12 + c21 - c22].
    pub chsh_estimate: f64,
    /// Root-sum-square of the per-setting errors, divided by 2.
    pub chsh_stderr: f64,
    /// (|estimate| - 1)/stderr; 0 when the run is deterministic.
    pub violation_z: f64,
    pub violation_observed: bool,
    /// The conventional S = 2 <B> normalization, for comparison with the
    /// usual |S| <= 2 presentation.
    pub chsh_conventional: f64,
}

/// Run the standard four-setting design: an independent, equally sized
/// ensemble per compatible pair (A_i, B_j), sampled from its joint table.
pub fn run_chsh_experiment(
    scenario: &BellScenario,
    psi: &PureState,
    rounds_per_setting: u64,
    seed: u64,
) -> Result<ExperimentRun> {
    if rounds_per_setting == 0 {
        return Err(MeasurementError::DegenerateRun);
    }
    if psi.dim().size() != scenario.size() {
        return Err(MeasurementError::DimensionMismatch {
            left: psi.dim().size(),
            right: scenario.size(),
        });
    }
    let rho = DensityOperator::from_pure(psi);
    let pairs = [
        ("A1B1", 1usize, 1usize, scenario.a1(), scenario.b1()),
        ("A1B2", 1, 2, scenario.a1(), scenario.b2()),
        ("A2B1", 2, 1, scenario.a2(), scenario.b1()),
        ("A2B2", 2, 2, scenario.a2(), scenario.b2()),
    ];

    let mut settings = Vec::with_capacity(4);
    for (stream, (label, a_index, b_index, a, b)) in pairs.into_iter().enumerate() {
        let family_a = projectors(a.operator(), DEFAULT_VALUE_TOLERANCE)?;
        let family_b = projectors(b.operator(), DEFAULT_VALUE_TOLERANCE)?;
        let jd = joint_distribution(&[family_a, family_b], &rho)?;
        let tallies = sample_joint_keyed(
            &jd,
            CounterRng::keyed(seed, stream as u64),
            rounds_per_setting,
        );
        settings.push(summarize_setting(
            label,
            a_index,
            b_index,
            &jd,
            &tallies,
            rounds_per_setting,
        )?);
    }

    let (c11, c12, c21, c22) = (
        settings[0].estimate,
        settings[1].estimate,
        settings[2].estimate,
        settings[3].estimate,
    );
    let chsh_estimate = 0.5 * (c11 + c12 + c21 - c22);
    let chsh_stderr = 0.5
        * settings
            .iter()
            .map(|s| s.stderr * s.stderr)
            .sum::<f64>()
            .sqrt();
    let violation_z = if chsh_stderr > 0.0 {
        (chsh_estimate.abs() - 1.0) / chsh_stderr
    } else {
        0.0
    };

    Ok(ExperimentRun {
        seed,
        rounds_per_setting,
        state: StateEcho::Pure(psi.clone()),
        settings,
        chsh_estimate,
        chsh_stderr,
        violation_z,
        violation_observed: violation_z >= VIOLATION_Z_THRESHOLD,
        chsh_conventional: 2.0 * chsh_estimate,
    })
}

fn summarize_setting(
    label: &str,
    a_index: usize,
    b_index: usize,
    jd: &crate::jpd::JointDistribution,
    tallies: &OutcomeTallies,
    rounds: u64,
) -> Result<SettingResult> {
    let mut cells = Vec::new();
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    let mut total = 0u64;
    for (key, &count) in tallies.counts() {
        let values = jd.values_at(key);
        let product: f64 = values.iter().product();
        cells.push(OutcomeCell {
            a_value: values[0],
            b_value: values[1],
            count,
        });
        sum += count as f64 * product;
        sum_sq += count as f64 * product * product;
        total += count;
    }
    if total != rounds {
        return Err(MeasurementError::ImplausibleStatistics {
            detail: format!("setting {label}: tallies sum to {total}, expected {rounds}"),
        });
    }
    let n = rounds as f64;
    let estimate = sum / n;
    let variance = (sum_sq / n - estimate * estimate).max(0.0);
    let stderr = (variance / n).sqrt();
    if estimate.abs() > 1.0 + 3.0 * stderr + 1e-12 {
        return Err(MeasurementError::ImplausibleStatistics {
            detail: format!("setting {label}: estimate {estimate} outside ±1 envelope"),
        });
    }
    Ok(SettingResult {
        setting: label.to_string(),
        a_index,
        b_index,
        cells,
        estimate,
        stderr,
    })
}

/// One row per setting, for spreadsheets.
pub fn experiment_csv(run: &ExperimentRun) -> String {
    let mut out = String::from(
        "setting,a_index,b_index,rounds,estimate,stderr,count_pp,count_pm,count_mp,count_mm\n",
    );
    for s in &run.settings {
        let mut pp = 0u64;
        let mut pm = 0u64;
        let mut mp = 0u64;
        let mut mm = 0u64;
        for cell in &s.cells {
            match (cell.a_value > 0.0, cell.b_value > 0.0) {
                (true, true) => pp += cell.count,
                (true, false) => pm += cell.count,
                (false, true) => mp += cell.count,
                (false, false) => mm += cell.count,
            }
        }
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            s.setting,
            s.a_index,
            s.b_index,
            run.rounds_per_setting,
            s.estimate,
            s.stderr,
            pp,
            pm,
            mp,
            mm
        ));
    }
    out
}
