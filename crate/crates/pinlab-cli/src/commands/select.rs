//! `pinlab select` — run the configured strategies and write the
//! effectiveness curves (`results.csv`) and their scalar summaries
//! (`summary.csv`).
//!
//! `run.meta` records the config fingerprint and row counts. Wall-clock
//! timing goes to stdout only: output files must be fully determined by
//! (config, seeds).

use std::time::Instant;

use anyhow::Result;

use crate::config::{config_hash, ExperimentConfig};
use crate::csvio::{render_results, render_summary};
use crate::runner::run_select;

use super::write_file;

pub fn run(cfg: &ExperimentConfig) -> Result<()> {
    let out = cfg.out_dir()?.clone();
    let started = Instant::now();
    let outcome = run_select(cfg)?;
    let elapsed = started.elapsed();

    write_file(&out, "config.used", &cfg.render())?;
    write_file(&out, "results.csv", &render_results(&outcome.rows))?;
    write_file(&out, "summary.csv", &render_summary(&outcome.summaries))?;
    let meta = format!(
        "config_hash = {:016x}\nnetworks = {}\nrows = {}\n",
        config_hash(cfg),
        outcome.sources.len(),
        outcome.rows.len()
    );
    write_file(&out, "run.meta", &meta)?;

    for source in &outcome.sources {
        if let Some((report, dropped)) = &source.ingest {
            if report.duplicate_edges + report.self_loops + report.skipped_lines > 0 || *dropped > 0 {
                println!(
                    "ingest: dropped {} duplicate edge(s), {} self-loop(s), {} non-edge line(s); \
                     {} node(s) outside the largest component",
                    report.duplicate_edges, report.self_loops, report.skipped_lines, dropped
                );
            }
        }
    }
    for failure in &outcome.failures {
        eprintln!("warning: {failure}");
    }
    println!(
        "wrote {} curve rows for {} network(s) to {} in {:.2}s",
        outcome.rows.len(),
        outcome.sources.len(),
        out.display(),
        elapsed.as_secs_f64()
    );
    Ok(())
}
