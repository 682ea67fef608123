//! chsh-lab: batch commands over the CHSH incompatibility toolkit.
//!
//! Exit codes: 0 all checks passed, 1 a scientific check failed, 2 input or
//! usage error. Reports embed the resolved config and seed; re-running a
//! command with the same config reproduces the JSON report byte-for-byte.

mod commands;
mod config;
mod presets;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{
    ChshRunConfig, JpdCheckConfig, LandauConfig, PcsftCheckConfig, SourceSpec, SpectralMaxConfig,
    Theorem1ScanConfig,
};
use report::Format;

/// Worker-count environment variable; flags take precedence.
const WORKERS_ENV: &str = "CHSH_LAB_WORKERS";

#[derive(Parser)]
#[command(
    name = "chsh-lab",
    about = "CHSH tests as measurements of observable incompatibility: Bell-operator checks, theorem scans, Monte Carlo experiments, field-average comparisons",
    version
)]
struct Cli {
    /// JSON config file for the subcommand (flags override its fields)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override the config seed
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write the report here; the human summary then goes to stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for scans and sampling (default: CHSH_LAB_WORKERS or
    /// all cores); results never depend on this
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the Landau identity B² = I - [A1,A2][B1,B2]/4 on a scenario
    LandauCheck(LandauArgs),
    /// Random tensor scenarios: local incompatibility == violation existence
    Theorem1Scan(Theorem1Args),
    /// Seeded Monte Carlo CHSH experiment with incompatibility extraction
    ChshRun(ChshRunArgs),
    /// Field-average vs quantum-average equivalence for a covariance model
    PcsftCheck(PcsftArgs),
    /// Permutation invariance of joint tables for commuting families
    JpdCheck(JpdArgs),
    /// Max-state construction from the operator square
    SpectralMax(SpectralArgs),
}

#[derive(Args)]
struct LandauArgs {
    /// Scenario preset (optimal-qubit, commuting-A, commuting-B,
    /// zero-product-MAB)
    #[arg(long)]
    preset: Option<String>,
    /// Scenario JSON file
    #[arg(long)]
    scenario: Option<PathBuf>,
}

#[derive(Args)]
struct Theorem1Args {
    /// Number of random scenarios
    #[arg(long)]
    n: Option<u64>,
    /// Local dimensions to draw from, comma separated (e.g. 2,3)
    #[arg(long, value_delimiter = ',')]
    local_dims: Option<Vec<usize>>,
}

#[derive(Args)]
struct ChshRunArgs {
    /// Scenario preset
    #[arg(long)]
    preset: Option<String>,
    /// Scenario JSON file
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// State preset name or JSON file path
    #[arg(long)]
    state: Option<String>,
    /// Rounds per setting
    #[arg(long)]
    rounds: Option<u64>,
}

#[derive(Args)]
struct PcsftArgs {
    /// Covariance preset name or JSON file path
    #[arg(long)]
    covariance: Option<String>,
    /// Dimension for parameterized covariance presets
    #[arg(long)]
    dim: Option<usize>,
    /// Observable preset names or file paths, comma separated
    #[arg(long, value_delimiter = ',')]
    observables: Option<Vec<String>>,
    /// Field samples to draw
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args)]
struct JpdArgs {
    /// Observables per commuting family
    #[arg(long)]
    m: Option<usize>,
    /// Hilbert-space dimension
    #[arg(long)]
    dim: Option<usize>,
    /// Number of random families to scan
    #[arg(long)]
    families: Option<u64>,
    /// Functional preset to evaluate alongside (chsh, mermin-3); "none"
    /// disables it
    #[arg(long)]
    functional: Option<String>,
}

#[derive(Args)]
struct SpectralArgs {
    /// Operator preset name or JSON file path
    #[arg(long)]
    operator: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_workers(cli.workers);

    let emission = dispatch(&cli);
    match emission {
        Ok(emission) => {
            if let Err(e) = report::emit(&emission, cli.out.as_deref(), cli.format) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if emission.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<report::Emission> {
    match &cli.command {
        Command::LandauCheck(args) => {
            let mut config: LandauConfig = load_or_default(cli)?;
            if let Some(name) = &args.preset {
                config.scenario = SourceSpec::Preset(name.clone());
            }
            if let Some(path) = &args.scenario {
                config.scenario = SourceSpec::File(path.clone());
            }
            commands::landau::run(config)
        }
        Command::Theorem1Scan(args) => {
            let mut config: Theorem1ScanConfig = load_or_default(cli)?;
            if let Some(n) = args.n {
                config.n_scenarios = n;
            }
            if let Some(dims) = &args.local_dims {
                config.local_dims = dims.clone();
            }
            if let Some(seed) = cli.seed {
                config.seed = seed;
            }
            commands::theorem_scan::run(config)
        }
        Command::ChshRun(args) => {
            let mut config: ChshRunConfig = load_or_default(cli)?;
            if let Some(name) = &args.preset {
                config.scenario = SourceSpec::Preset(name.clone());
            }
            if let Some(path) = &args.scenario {
                config.scenario = SourceSpec::File(path.clone());
            }
            if let Some(state) = &args.state {
                config.state = SourceSpec::from_flag(state);
            }
            if let Some(rounds) = args.rounds {
                config.rounds_per_setting = rounds;
            }
            if let Some(seed) = cli.seed {
                config.seed = seed;
            }
            commands::chsh_run::run(config)
        }
        Command::PcsftCheck(args) => {
            let mut config: PcsftCheckConfig = load_or_default(cli)?;
            if let Some(cov) = &args.covariance {
                config.covariance = SourceSpec::from_flag(cov);
            }
            if let Some(dim) = args.dim {
                config.dim = dim;
            }
            if let Some(observables) = &args.observables {
                config.observables = observables
                    .iter()
                    .map(|o| SourceSpec::from_flag(o))
                    .collect();
            }
            if let Some(n) = args.n {
                config.n = n;
            }
            if let Some(seed) = cli.seed {
                config.seed = seed;
            }
            commands::pcsft_check::run(config)
        }
        Command::JpdCheck(args) => {
            let mut config: JpdCheckConfig = load_or_default(cli)?;
            if let Some(m) = args.m {
                config.m = m;
            }
            if let Some(dim) = args.dim {
                config.dim = dim;
            }
            if let Some(families) = args.families {
                config.n_families = families;
            }
            if let Some(functional) = &args.functional {
                config.functional = if functional.eq_ignore_ascii_case("none") {
                    None
                } else {
                    Some(config::FunctionalSpec {
                        name: functional.clone(),
                    })
                };
            }
            if let Some(seed) = cli.seed {
                config.seed = seed;
            }
            commands::jpd_check::run(config)
        }
        Command::SpectralMax(args) => {
            let mut config: SpectralMaxConfig = load_or_default(cli)?;
            if let Some(operator) = &args.operator {
                config.operator = SourceSpec::from_flag(operator);
            }
            commands::spectral_max::run(config)
        }
    }
}

fn load_or_default<T: serde::de::DeserializeOwned + Default>(cli: &Cli) -> anyhow::Result<T> {
    match &cli.config {
        Some(path) => config::read_config(path),
        None => Ok(T::default()),
    }
}

fn configure_workers(flag: Option<usize>) {
    let from_env = std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    if let Some(workers) = flag.or(from_env) {
        if workers > 0 {
            // Ignore the error if a pool already exists; worker count never
            // changes results, only wall-clock time.
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build_global();
        }
    }
}
