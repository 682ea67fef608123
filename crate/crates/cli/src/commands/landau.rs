use anyhow::Result;
use serde::Serialize;

use chsh_engine::landau_check;

use crate::commands::resolve_scenario;
use crate::config::LandauConfig;
use crate::report::{render_report, Emission, Report};

#[derive(Serialize)]
struct LandauResults {
    residual: f64,
    bell_norm: f64,
    tolerance: f64,
    pass: bool,
}

pub fn run(config: LandauConfig) -> Result<Emission> {
    let scenario = resolve_scenario(&config.scenario)?;
    let check = landau_check(&scenario)?;
    let passed = check.pass;
    let results = LandauResults {
        residual: check.residual,
        bell_norm: check.bell_norm,
        tolerance: check.tolerance,
        pass: check.pass,
    };
    let human = format!(
        "landau-check: ||B·B - (I - [A1,A2][B1,B2]/4)|| = {:.3e} (tolerance {:.3e}, ||B|| = {:.6}) -> {}\n",
        results.residual,
        results.tolerance,
        results.bell_norm,
        if passed { "PASS" } else { "FAIL" }
    );
    let json = render_report(&Report {
        command: "landau-check",
        config,
        results,
        passed,
    })?;
    Ok(Emission {
        json,
        csv: None,
        human,
        passed,
    })
}
