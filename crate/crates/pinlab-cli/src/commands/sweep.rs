//! `pinlab sweep` — re-run selection along one degree-model axis and
//! tabulate seed-averaged ω/δ per strategy, with a monotonicity flag on the
//! ω trend.
//!
//! Each axis value gets its own subdirectory with the full per-seed output;
//! the top level aggregates them. A failing point is reported and skipped —
//! the sweep continues with the remaining values.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{anyhow, ensure, Context, Result};
use pinlab_core::metrics::{best_suboptimal, improvement_ratios, CurveSummary};
use pinlab_core::Strategy;

use crate::config::{ExperimentConfig, Source};
use crate::csvio::{render_results, render_summary, sig};
use crate::runner::run_select;

use super::write_file;

/// Degree-model parameter a sweep can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    KSat,
    KCut,
    Gamma,
}

impl Axis {
    fn apply(self, cfg: &mut ExperimentConfig, value: f64) {
        match self {
            Axis::KSat => cfg.k_sat = value,
            Axis::KCut => cfg.k_cut = value,
            Axis::Gamma => cfg.gamma = value,
        }
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::KSat => "k_sat",
            Axis::KCut => "k_cut",
            Axis::Gamma => "gamma",
        })
    }
}

impl std::str::FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "k_sat" => Ok(Axis::KSat),
            "k_cut" => Ok(Axis::KCut),
            "gamma" => Ok(Axis::Gamma),
            other => Err(format!("unknown sweep axis '{other}' (expected k_sat, k_cut or gamma)")),
        }
    }
}

/// Column order of `sweep_summary.csv`.
pub const SWEEP_HEADER: &str = "axis,value,strategy,backend,N,omega,delta,d_omega,d_delta";

#[derive(Default)]
struct Cell {
    omega_sum: f64,
    delta_sum: f64,
    seeds: usize,
}

fn parse_value(raw: &str) -> Result<f64> {
    if raw.trim() == "inf" {
        return Ok(f64::INFINITY);
    }
    raw.trim()
        .parse()
        .with_context(|| format!("bad --values entry '{raw}' (expected a number or 'inf')"))
}

pub fn run(cfg: &ExperimentConfig, axis_raw: &str, values: &[String]) -> Result<()> {
    let axis: Axis = axis_raw.parse().map_err(|e: String| anyhow!(e))?;
    ensure!(
        cfg.source == Source::Synthetic,
        "sweep varies the degree model, so the source must be synthetic"
    );
    ensure!(!values.is_empty(), "sweep needs at least one --values entry");
    cfg.validate()?;
    let out = cfg.out_dir()?.clone();
    let backend = cfg.backend.resolve(&cfg.source).tag();

    write_file(&out, "config.used", &cfg.render())?;
    write_file(&out, "sweep.meta", &format!("axis = {axis}\nvalues = {}\n", values.join(",")))?;

    // One select run per axis value, each with its own output directory.
    let mut table: BTreeMap<(usize, Strategy), Cell> = BTreeMap::new();
    let mut errors: Vec<String> = Vec::new();
    for (idx, raw) in values.iter().enumerate() {
        let value = parse_value(raw)?;
        let mut sub = cfg.clone();
        axis.apply(&mut sub, value);
        let label = format!("{axis}-{}", raw.trim());
        match run_select(&sub) {
            Ok(outcome) => {
                let dir = out.join(&label);
                write_file(&dir, "config.used", &sub.render())?;
                write_file(&dir, "results.csv", &render_results(&outcome.rows))?;
                write_file(&dir, "summary.csv", &render_summary(&outcome.summaries))?;
                for failure in &outcome.failures {
                    let msg = format!("{label}: {failure}");
                    eprintln!("warning: {msg}");
                    errors.push(msg);
                }
                for row in &outcome.summaries {
                    let cell = table.entry((idx, row.strategy)).or_default();
                    cell.omega_sum += row.omega;
                    cell.delta_sum += row.delta;
                    cell.seeds += 1;
                }
            }
            Err(e) => {
                let msg = format!("{label}: {e:#}");
                eprintln!("warning: sweep point failed — {msg}");
                errors.push(msg);
            }
        }
    }
    ensure!(!table.is_empty(), "every sweep point failed:\n{}", errors.join("\n"));

    // Seed-averaged table, Δ taken against the averaged best suboptimal
    // baseline of the same row.
    let mut summary = String::from(SWEEP_HEADER);
    summary.push('\n');
    for (idx, raw) in values.iter().enumerate() {
        let means: Vec<(Strategy, CurveSummary)> = cfg
            .strategies
            .iter()
            .filter_map(|&s| {
                table.get(&(idx, s)).map(|cell| {
                    let k = cell.seeds as f64;
                    (
                        s,
                        CurveSummary {
                            omega: cell.omega_sum / k,
                            delta: cell.delta_sum / k,
                        },
                    )
                })
            })
            .collect();
        let baseline = best_suboptimal(means.iter().filter(|(s, _)| s.is_centrality()).map(|&(_, m)| m));
        for &(s, m) in &means {
            let ratios = baseline.map(|b| improvement_ratios(m, b)).transpose()?;
            writeln!(
                summary,
                "{axis},{},{s},{backend},{},{},{},{},{}",
                raw.trim(),
                cfg.n,
                sig(m.omega),
                sig(m.delta),
                ratios.map(|r| sig(r.d_omega)).unwrap_or_default(),
                ratios.map(|r| sig(r.d_delta)).unwrap_or_default(),
            )
            .unwrap();
        }
    }
    write_file(&out, "sweep_summary.csv", &summary)?;

    // ω trend along the axis, per strategy, in the order the values were
    // given.
    let mut trends = String::from("strategy,omega_trend\n");
    for &s in &cfg.strategies {
        let series: Vec<f64> = (0..values.len())
            .filter_map(|idx| table.get(&(idx, s)).map(|c| c.omega_sum / c.seeds as f64))
            .collect();
        let trend = if series.len() < values.len() {
            "incomplete"
        } else if values.len() < 2 {
            "n/a"
        } else if series.windows(2).all(|w| w[1] < w[0]) {
            "monotone decreasing"
        } else {
            "not monotone"
        };
        writeln!(trends, "{s},{trend}").unwrap();
        println!("{s}: omega {trend} along {axis}");
    }
    write_file(&out, "sweep_trends.csv", &trends)?;
    if !errors.is_empty() {
        write_file(&out, "sweep_errors.txt", &(errors.join("\n") + "\n"))?;
    }
    println!("wrote sweep over {} {axis} value(s) to {}", values.len(), out.display());
    Ok(())
}
