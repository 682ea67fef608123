//! Command configurations: defaults, JSON config files with unknown keys
//! rejected, and flag overrides. The resolved config is echoed verbatim
//! into every report so a run can be reproduced bit-exactly.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use operator_core::MAX_DIM;

/// Where a scenario, state, or operator comes from.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceSpec {
    Preset(String),
    File(PathBuf),
}

impl SourceSpec {
    /// Flag strings: anything that looks like a path is a file, the rest
    /// are preset names.
    pub fn from_flag(value: &str) -> Self {
        if value.contains('/') || value.contains('\\') || value.ends_with(".json") {
            SourceSpec::File(PathBuf::from(value))
        } else {
            SourceSpec::Preset(value.to_string())
        }
    }
}

pub fn read_config<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LandauConfig {
    pub scenario: SourceSpec,
}

impl Default for LandauConfig {
    fn default() -> Self {
        Self {
            scenario: SourceSpec::Preset("optimal-qubit".into()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theorem1ScanConfig {
    pub n_scenarios: u64,
    pub local_dims: Vec<usize>,
    pub seed: u64,
}

impl Default for Theorem1ScanConfig {
    fn default() -> Self {
        Self {
            n_scenarios: 500,
            local_dims: vec![2, 3],
            seed: 1,
        }
    }
}

impl Theorem1ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_scenarios > 1_000_000 {
            bail!("n_scenarios {} exceeds the cap 1000000", self.n_scenarios);
        }
        if self.local_dims.is_empty() {
            bail!("local_dims must not be empty");
        }
        for &d in &self.local_dims {
            if d < 2 {
                bail!("local dimension {d} is below 2");
            }
        }
        let max_product = self.local_dims.iter().max().unwrap().pow(2);
        if max_product > MAX_DIM {
            bail!(
                "local dimensions allow a product of {max_product}, above the cap {MAX_DIM}"
            );
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChshRunConfig {
    pub scenario: SourceSpec,
    pub state: SourceSpec,
    pub rounds_per_setting: u64,
    pub seed: u64,
}

impl Default for ChshRunConfig {
    fn default() -> Self {
        Self {
            scenario: SourceSpec::Preset("optimal-qubit".into()),
            state: SourceSpec::Preset("singlet".into()),
            rounds_per_setting: 1_000_000,
            seed: 42,
        }
    }
}

impl ChshRunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.rounds_per_setting == 0 {
            bail!("rounds_per_setting must be positive");
        }
        if self.rounds_per_setting > 100_000_000 {
            bail!(
                "rounds_per_setting {} exceeds the cap 100000000",
                self.rounds_per_setting
            );
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PcsftCheckConfig {
    pub covariance: SourceSpec,
    /// Dimension for parameterized covariance presets; ignored for files.
    pub dim: usize,
    pub observables: Vec<SourceSpec>,
    pub n: u64,
    pub seed: u64,
}

impl Default for PcsftCheckConfig {
    fn default() -> Self {
        Self {
            covariance: SourceSpec::Preset("identity".into()),
            dim: 2,
            observables: vec![
                SourceSpec::Preset("identity".into()),
                SourceSpec::Preset("sigma-x".into()),
                SourceSpec::Preset("sigma-y".into()),
                SourceSpec::Preset("sigma-z".into()),
            ],
            n: 100_000,
            seed: 7,
        }
    }
}

impl PcsftCheckConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            bail!("sample count n must be positive");
        }
        if self.dim == 0 || self.dim > MAX_DIM {
            bail!("dim {} is outside 1..={MAX_DIM}", self.dim);
        }
        if self.observables.is_empty() {
            bail!("at least one observable is required");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionalSpec {
    pub name: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JpdCheckConfig {
    /// Observables per family tuple.
    pub m: usize,
    pub dim: usize,
    pub n_families: u64,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functional: Option<FunctionalSpec>,
}

impl Default for JpdCheckConfig {
    fn default() -> Self {
        Self {
            m: 3,
            dim: 4,
            n_families: 50,
            seed: 11,
            functional: Some(FunctionalSpec {
                name: "chsh".into(),
            }),
        }
    }
}

impl JpdCheckConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.m > 4 {
            bail!("m = {} is outside 1..=4", self.m);
        }
        if self.dim < 2 || self.dim > MAX_DIM {
            bail!("dim {} is outside 2..={MAX_DIM}", self.dim);
        }
        if self.n_families == 0 || self.n_families > 100_000 {
            bail!("n_families {} is outside 1..=100000", self.n_families);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralMaxConfig {
    pub operator: SourceSpec,
}

impl Default for SpectralMaxConfig {
    fn default() -> Self {
        Self {
            operator: SourceSpec::Preset("bell-optimal".into()),
        }
    }
}
