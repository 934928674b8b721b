//! `pinlab validate` — randomized self-checks of the selection rules
//! against exhaustive and closed-form oracles.
//!
//! Prints one line per suite and exits with status 1 when any suite found a
//! violation, so scripts can gate on it.

use std::process::ExitCode;

use anyhow::Result;
use pinlab_core::validation::{run_all, ValidationConfig};

pub struct ValidateArgs {
    pub trials: usize,
    pub n_max: usize,
    pub c_max: usize,
    pub seed: u64,
    pub tol: f64,
}

pub fn run(args: &ValidateArgs) -> Result<ExitCode> {
    let cfg = ValidationConfig {
        trials: args.trials,
        n_max: args.n_max,
        c_max: args.c_max,
        seed: args.seed,
        tol: args.tol,
    };
    let report = run_all(&cfg)?;
    print!("{report}");
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
