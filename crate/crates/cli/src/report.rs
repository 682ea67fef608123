//! Report envelope and output plumbing. JSON is the primary artifact and is
//! byte-stable for a fixed config and seed: no timestamps, no hostnames, no
//! worker counts.

use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Serialize)]
pub struct Report<C: Serialize, R: Serialize> {
    pub command: &'static str,
    pub config: C,
    pub results: R,
    pub passed: bool,
}

/// What a command hands back to main for emission.
pub struct Emission {
    pub json: String,
    pub csv: Option<String>,
    pub human: String,
    pub passed: bool,
}

pub fn render_report<C: Serialize, R: Serialize>(report: &Report<C, R>) -> Result<String> {
    let mut text = serde_json::to_string_pretty(report).context("serializing report")?;
    text.push('\n');
    Ok(text)
}

/// Primary artifact to --out (or stdout), human summary to the other stream.
pub fn emit(emission: &Emission, out: Option<&Path>, format: Format) -> Result<()> {
    let payload: &str = match format {
        Format::Json => &emission.json,
        Format::Csv => match &emission.csv {
            Some(csv) => csv,
            None => bail!("this command has no CSV form; use --format json"),
        },
    };
    match out {
        Some(path) => {
            std::fs::write(path, payload)
                .with_context(|| format!("writing report to {}", path.display()))?;
            print!("{}", emission.human);
            std::io::stdout().flush().ok();
        }
        None => {
            print!("{payload}");
            std::io::stdout().flush().ok();
            eprint!("{}", emission.human);
            std::io::stderr().flush().ok();
        }
    }
    Ok(())
}
