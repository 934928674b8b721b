//! `pinlab plot` — render a `results.csv` as a self-contained SVG chart of
//! `1/λ₁` versus the pinned fraction `p`, one curve per strategy.
//!
//! When the CSV holds several seeds, the inverse eigenvalues are averaged
//! per (strategy, budget) so each strategy still plots as one curve.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use pinlab_core::Strategy;

use crate::csvio::parse_results;
use crate::svg::{render_chart, Series};

use super::write_file;

/// Sort key putting known strategy tags in canonical order, unknown tags
/// after them alphabetically.
fn strategy_rank(tag: &str) -> (usize, &str) {
    match Strategy::ALL.iter().position(|s| s.tag() == tag) {
        Some(i) => (i, ""),
        None => (Strategy::ALL.len(), tag),
    }
}

/// Build the per-strategy series from parsed rows.
fn build_series(points: &[crate::csvio::PlotPoint]) -> Vec<Series> {
    // (strategy, c) -> (p, Σ 1/λ₁, count); BTreeMap keeps budget order.
    let mut grouped: BTreeMap<(usize, &str), BTreeMap<usize, (f64, f64, usize)>> = BTreeMap::new();
    for pt in points {
        let (rank, _) = strategy_rank(&pt.strategy);
        let cell = grouped
            .entry((rank, pt.strategy.as_str()))
            .or_default()
            .entry(pt.c)
            .or_insert((pt.p, 0.0, 0));
        cell.1 += pt.inv_lambda1;
        cell.2 += 1;
    }
    grouped
        .into_iter()
        .map(|((_, name), by_budget)| Series {
            name: name.to_owned(),
            points: by_budget
                .into_values()
                .map(|(p, sum, count)| (p, sum / count as f64))
                .collect(),
        })
        .collect()
}

pub fn run(input: &Path, out: Option<&Path>) -> Result<()> {
    let text = std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let points = parse_results(&text).with_context(|| format!("parsing {}", input.display()))?;
    let series = build_series(&points);

    let stem = input
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("results")
        .to_owned();
    let svg = render_chart(&series, &stem);
    let dir: PathBuf = match out {
        Some(dir) => dir.to_owned(),
        None => input.parent().map(Path::to_owned).unwrap_or_else(|| PathBuf::from(".")),
    };
    let path = write_file(&dir, &format!("{stem}.svg"), &svg)?;
    println!("wrote {} ({} curve(s))", path.display(), series.len());
    Ok(())
}
