//! `pinlab` — driver-node selection experiments at the command line.
//!
//! Subcommands: `generate` samples connected synthetic networks, `select`
//! runs the selection strategies and writes effectiveness curves as CSV,
//! `sweep` repeats `select` along one degree-model axis, `validate` runs
//! the randomized self-check suites, and `plot` renders a results CSV as an
//! SVG chart. Identical configuration and seeds produce byte-identical
//! output files.
//!
//! The `PINLAB_THREADS` environment variable caps worker parallelism (it is
//! ignored by builds without the `parallel` feature).

mod commands;
mod config;
mod csvio;
mod runner;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};
use pinlab_core::spectral::EvalBackend;

use commands::validate::ValidateArgs;
use config::{ExperimentConfig, Overrides};

#[derive(Parser)]
#[command(
    name = "pinlab",
    version,
    about = "Pinning-set selection and spectral evaluation for network synchronization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample connected synthetic networks and write them to disk
    Generate(RunFlags),
    /// Run selection strategies and write effectiveness curves as CSV
    Select(RunFlags),
    /// Re-run selection along one degree-model axis and tabulate omega/delta
    Sweep(SweepFlags),
    /// Randomized self-checks against exhaustive and closed-form oracles
    Validate(ValidateFlags),
    /// Render a results CSV as an SVG chart
    Plot(PlotFlags),
}

/// Flags shared by the run-style subcommands; each one overrides the
/// matching config key.
#[derive(Args)]
struct RunFlags {
    /// Experiment configuration file (flat `key = value` lines)
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Generation seed; repeat the flag for several networks
    #[arg(long = "seed", value_name = "S")]
    seed: Vec<u64>,
    /// Evaluation backend: annealed or quenched
    #[arg(long, value_name = "BACKEND")]
    backend: Option<String>,
    /// Largest pinned fraction; budgets run c = 1..=floor(pmax * N)
    #[arg(long, value_name = "F")]
    pmax: Option<f64>,
    /// Comma-separated strategies (A1, A2, EXH, BFG, DC, BC, CC, CR)
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    strategies: Option<Vec<String>>,
    /// on: reduce disconnected networks to the largest component;
    /// off: resample synthetic networks / reject disconnected edge lists
    #[arg(long, value_name = "ON|OFF", value_parser = ["on", "off"])]
    lcc: Option<String>,
}

impl RunFlags {
    fn overrides(&self) -> Result<Overrides> {
        let backend = self
            .backend
            .as_deref()
            .map(|s| EvalBackend::from_str(s).map_err(|e| anyhow!(e)))
            .transpose()?;
        Ok(Overrides {
            seeds: self.seed.clone(),
            backend,
            p_max: self.pmax,
            strategies: self.strategies.clone(),
            lcc: self.lcc.as_deref().map(|s| s == "on"),
            out: self.out.clone(),
        })
    }

    fn into_config(&self) -> Result<ExperimentConfig> {
        let mut cfg = config::load(self.config.as_ref())?;
        cfg.apply_overrides(&self.overrides()?)?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct SweepFlags {
    #[command(flatten)]
    run: RunFlags,
    /// Degree-model axis to vary: k_sat, k_cut or gamma
    #[arg(long, value_name = "NAME")]
    axis: String,
    /// Comma-separated axis values (numbers, or 'inf' for k_cut)
    #[arg(long, value_name = "LIST", value_delimiter = ',', required = true)]
    values: Vec<String>,
}

#[derive(Args)]
struct ValidateFlags {
    /// Instances per suite
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Largest node count of sampled instances
    #[arg(long = "nmax", value_name = "N", default_value_t = 16)]
    n_max: usize,
    /// Largest budget checked per instance
    #[arg(long = "cmax", value_name = "C", default_value_t = 5)]
    c_max: usize,
    /// Base seed for the suite streams
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comparison tolerance
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct PlotFlags {
    /// A results.csv produced by select or sweep
    input: PathBuf,
    /// Output directory (defaults to the input's directory)
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> Result<ExitCode> {
    init_thread_cap()?;
    let cli = Cli::parse();
    match cli.command {
        Command::Generate(flags) => {
            commands::generate::run(&flags.into_config()?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Select(flags) => {
            commands::select::run(&flags.into_config()?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep(flags) => {
            commands::sweep::run(&flags.run.into_config()?, &flags.axis, &flags.values)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate(flags) => commands::validate::run(&ValidateArgs {
            trials: flags.trials,
            n_max: flags.n_max,
            c_max: flags.c_max,
            seed: flags.seed,
            tol: flags.tol,
        }),
        Command::Plot(flags) => {
            commands::plot::run(&flags.input, flags.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Apply the `PINLAB_THREADS` cap before any parallel work starts.
fn init_thread_cap() -> Result<()> {
    #[cfg(feature = "parallel")]
    if let Ok(raw) = std::env::var("PINLAB_THREADS") {
        let threads: usize = raw
            .trim()
            .parse()
            .map_err(|_| anyhow!("PINLAB_THREADS must be a positive integer, got '{raw}'"))?;
        if threads == 0 {
            return Err(anyhow!("PINLAB_THREADS must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| anyhow!("initializing the thread pool: {e}"))?;
    }
    Ok(())
}
