pub mod chsh_run;
pub mod jpd_check;
pub mod landau;
pub mod pcsft_check;
pub mod spectral_max;
pub mod theorem_scan;

use anyhow::Result;

use crate::config::SourceSpec;
use crate::presets;

pub fn resolve_scenario(source: &SourceSpec) -> Result<chsh_engine::BellScenario> {
    match source {
        SourceSpec::Preset(name) => presets::scenario(name),
        SourceSpec::File(path) => presets::load_scenario_file(path),
    }
}

pub fn resolve_state(source: &SourceSpec) -> Result<operator_core::PureState> {
    match source {
        SourceSpec::Preset(name) => presets::state(name),
        SourceSpec::File(path) => presets::load_state_file(path),
    }
}

pub fn resolve_operator(source: &SourceSpec) -> Result<operator_core::HermitianOperator> {
    match source {
        SourceSpec::Preset(name) => presets::operator(name),
        SourceSpec::File(path) => presets::load_operator_file(path),
    }
}
