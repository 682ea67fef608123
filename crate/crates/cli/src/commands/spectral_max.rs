use anyhow::Result;
use num_complex::Complex64;
use serde::Serialize;

use operator_core::PureState;
use spectral_construct::{max_state_from_square, square_vs_linear_max_states};

use crate::commands::resolve_operator;
use crate::config::SpectralMaxConfig;
use crate::report::{render_report, Emission, Report};

#[derive(Serialize)]
struct SpectralResults {
    /// |⟨φ|C|φ⟩| for the constructed φ; must equal the spectral norm.
    value: f64,
    /// Sign of the eigenvalue the construction landed on.
    sign: f64,
    spectral_norm: f64,
    agreement_error: f64,
    phi: PureState,
    /// Do the maximizers of ⟨C²⟩ and |⟨C⟩| coincide?
    same_maximizer: bool,
    psi_sq: PureState,
    phi_lin: PureState,
    decomposition_re: Vec<f64>,
    decomposition_im: Vec<f64>,
}

pub fn run(config: SpectralMaxConfig) -> Result<Emission> {
    let operator = resolve_operator(&config.operator)?;
    let max_state = max_state_from_square(&operator)?;
    let norm = operator.spectral_norm()?;
    let agreement_error = (max_state.value - norm).abs();
    let passed = agreement_error <= 1e-9;

    let comparison = square_vs_linear_max_states(&operator)?;
    let (re, im): (Vec<f64>, Vec<f64>) = comparison
        .coefficients
        .iter()
        .map(|c: &Complex64| (c.re, c.im))
        .unzip();

    let human = format!(
        "spectral-max: value {:.9} (sign {:+}) vs spectral norm {:.9}; error {:.3e} -> {}\n  \
         square and linear maximizers {}\n",
        max_state.value,
        max_state.sign,
        norm,
        agreement_error,
        if passed { "PASS" } else { "FAIL" },
        if comparison.same {
            "coincide"
        } else {
            "differ (the square admits maximizers the linear form does not)"
        }
    );

    let results = SpectralResults {
        value: max_state.value,
        sign: max_state.sign,
        spectral_norm: norm,
        agreement_error,
        phi: max_state.phi,
        same_maximizer: comparison.same,
        psi_sq: comparison.psi_sq,
        phi_lin: comparison.phi_lin,
        decomposition_re: re,
        decomposition_im: im,
    };
    let json = render_report(&Report {
        command: "spectral-max",
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
