//! Named presets: every regime the library distinguishes is reachable
//! without hand-writing matrices.

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;

use chsh_engine::generate::{
    commuting_a_scenario, commuting_b_scenario, optimal_qubit_scenario, zero_product_mab_scenario,
};
use chsh_engine::states::{phi_plus, product_basis, singlet};
use chsh_engine::{bell_operator, BellScenario};
use measurement_sim::BellFunctional;
use operator_core::pauli::{sigma_x, sigma_y, sigma_z};
use operator_core::{HermitianOperator, HilbertDim, PureState};
use pcsft::CovarianceOperator;

pub const SCENARIO_PRESETS: &[&str] = &[
    "optimal-qubit",
    "commuting-A",
    "commuting-B",
    "zero-product-MAB",
];

pub fn scenario(name: &str) -> Result<BellScenario> {
    let s = match normalize(name).as_str() {
        "optimal-qubit" => optimal_qubit_scenario(),
        "commuting-a" => commuting_a_scenario(),
        "commuting-b" => commuting_b_scenario(),
        "zero-product-mab" => zero_product_mab_scenario(),
        _ => {
            bail!(
                "unknown scenario preset '{name}'; available: {}",
                SCENARIO_PRESETS.join(", ")
            )
        }
    };
    s.map_err(|e| anyhow!("building scenario preset '{name}': {e}"))
}

pub const STATE_PRESETS: &[&str] = &["singlet", "phi-plus", "product-e1e1", "ghz-3"];

pub fn state(name: &str) -> Result<PureState> {
    match normalize(name).as_str() {
        "singlet" => singlet().map_err(into_anyhow),
        "phi-plus" => phi_plus().map_err(into_anyhow),
        "product-e1e1" => product_basis(2, 2, 0, 0).map_err(into_anyhow),
        "ghz-3" => {
            let dim = HilbertDim::with_factors(vec![2, 2, 2]).map_err(into_anyhow)?;
            let x = 1.0 / 2.0_f64.sqrt();
            let mut amps = vec![Complex64::new(0.0, 0.0); 8];
            amps[0] = Complex64::new(x, 0.0);
            amps[7] = Complex64::new(x, 0.0);
            PureState::new(dim, amps).map_err(into_anyhow)
        }
        _ => bail!(
            "unknown state preset '{name}'; available: {}",
            STATE_PRESETS.join(", ")
        ),
    }
}

pub const COVARIANCE_PRESETS: &[&str] = &["identity", "pure-e1"];

/// Covariance presets parameterized by dimension.
pub fn covariance(name: &str, dim: usize) -> Result<CovarianceOperator> {
    let hd = HilbertDim::new(dim).map_err(into_anyhow)?;
    let op = match normalize(name).as_str() {
        "identity" => HermitianOperator::identity(hd),
        "pure-e1" => HermitianOperator::from_upper(hd, |i, j| {
            if i == 0 && j == 0 {
                Complex64::new(2.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }),
        _ => bail!(
            "unknown covariance preset '{name}'; available: {}",
            COVARIANCE_PRESETS.join(", ")
        ),
    };
    CovarianceOperator::new(op).map_err(|e| anyhow!("covariance preset '{name}': {e}"))
}

pub const OBSERVABLE_PRESETS: &[&str] = &["identity", "sigma-x", "sigma-y", "sigma-z"];

pub fn observable(name: &str, dim: usize) -> Result<HermitianOperator> {
    let key = normalize(name);
    if key == "identity" {
        return Ok(HermitianOperator::identity(
            HilbertDim::new(dim).map_err(into_anyhow)?,
        ));
    }
    let op = match key.as_str() {
        "sigma-x" => sigma_x(),
        "sigma-y" => sigma_y(),
        "sigma-z" => sigma_z(),
        _ => bail!(
            "unknown observable preset '{name}'; available: {}",
            OBSERVABLE_PRESETS.join(", ")
        ),
    };
    if dim != 2 {
        bail!("observable preset '{name}' is two-dimensional, covariance has dimension {dim}");
    }
    Ok(op)
}

pub const OPERATOR_PRESETS: &[&str] = &["sigma-x", "sigma-z", "neg-identity-2", "bell-optimal"];

pub fn operator(name: &str) -> Result<HermitianOperator> {
    match normalize(name).as_str() {
        "sigma-x" => Ok(sigma_x()),
        "sigma-z" => Ok(sigma_z()),
        "neg-identity-2" => Ok(
            HermitianOperator::identity(HilbertDim::new(2).map_err(into_anyhow)?).scale_re(-1.0),
        ),
        "bell-optimal" => {
            let s = optimal_qubit_scenario().map_err(|e| anyhow!("{e}"))?;
            bell_operator(&s).map_err(|e| anyhow!("{e}"))
        }
        _ => bail!(
            "unknown operator preset '{name}'; available: {}",
            OPERATOR_PRESETS.join(", ")
        ),
    }
}

pub const FUNCTIONAL_PRESETS: &[&str] = &["chsh", "mermin-3"];

/// Projector-family groups and default state for a named functional.
pub fn functional_groups(
    name: &str,
) -> Result<(BellFunctional, Vec<Vec<measurement_sim::ProjectorFamily>>, PureState)> {
    use measurement_sim::{projectors, DEFAULT_VALUE_TOLERANCE};
    match normalize(name).as_str() {
        "chsh" => {
            let s = optimal_qubit_scenario().map_err(|e| anyhow!("{e}"))?;
            let groups = vec![
                vec![
                    projectors(s.a1().operator(), DEFAULT_VALUE_TOLERANCE)?,
                    projectors(s.a2().operator(), DEFAULT_VALUE_TOLERANCE)?,
                ],
                vec![
                    projectors(s.b1().operator(), DEFAULT_VALUE_TOLERANCE)?,
                    projectors(s.b2().operator(), DEFAULT_VALUE_TOLERANCE)?,
                ],
            ];
            Ok((BellFunctional::chsh(), groups, state("phi-plus")?))
        }
        "mermin-3" => {
            let id = HermitianOperator::identity(HilbertDim::new(2).map_err(into_anyhow)?);
            let lift = |op: &HermitianOperator, slot: usize| -> Result<HermitianOperator> {
                let parts: [&HermitianOperator; 3] = match slot {
                    0 => [op, &id, &id],
                    1 => [&id, op, &id],
                    _ => [&id, &id, op],
                };
                parts[0]
                    .tensor(parts[1])
                    .and_then(|t| t.tensor(parts[2]))
                    .map_err(into_anyhow)
            };
            let mut groups = Vec::new();
            for slot in 0..3 {
                groups.push(vec![
                    projectors(&lift(&sigma_x(), slot)?, DEFAULT_VALUE_TOLERANCE)?,
                    projectors(&lift(&sigma_y(), slot)?, DEFAULT_VALUE_TOLERANCE)?,
                ]);
            }
            Ok((BellFunctional::mermin3(), groups, state("ghz-3")?))
        }
        _ => bail!(
            "unknown functional preset '{name}'; available: {}",
            FUNCTIONAL_PRESETS.join(", ")
        ),
    }
}

pub fn load_scenario_file(path: &std::path::Path) -> Result<BellScenario> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading scenario file {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing scenario {}", path.display()))
}

pub fn load_state_file(path: &std::path::Path) -> Result<PureState> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading state file {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing state {}", path.display()))
}

pub fn load_operator_file(path: &std::path::Path) -> Result<HermitianOperator> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading operator file {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing operator {}", path.display()))
}

pub fn load_covariance_file(path: &std::path::Path) -> Result<CovarianceOperator> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading covariance file {}", path.display()))?;
    serde_json::from_str(&text)
        .with_context(|| format!("parsing covariance {}", path.display()))
}

fn normalize(name: &str) -> String {
    name.trim().to_ascii_lowercase()
}

fn into_anyhow(e: operator_core::OperatorError) -> anyhow::Error {
    anyhow!("{e}")
}
