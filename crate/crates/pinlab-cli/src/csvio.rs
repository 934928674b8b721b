//! CSV schemas shared by the subcommands.
//!
//! All reals are written with 12 significant digits, `.` decimal separator,
//! no thousands grouping, and no exponent notation, so files are
//! byte-identical across runs and locales. Optional fields (`k_star`,
//! `d_hm`, the improvement ratios) stay empty rather than inventing
//! sentinels.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use pinlab_core::metrics::EffectivenessCurve;
use pinlab_core::spectral::Backend;
use pinlab_core::Strategy;

/// Column order of `results.csv`.
pub const RESULTS_HEADER: &str = "seed,strategy,backend,N,c,p,lambda1,inv_lambda1,k_star,d_hm,set";
/// Column order of `summary.csv`.
pub const SUMMARY_HEADER: &str = "seed,strategy,backend,N,omega,delta,d_omega,d_delta";

/// Format with 12 significant digits in plain decimal notation.
pub fn sig(x: f64) -> String {
    debug_assert!(x.is_finite(), "CSV reals must be finite, got {x}");
    if x == 0.0 {
        return "0".to_owned();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// One `results.csv` row: a single (seed, strategy, budget) evaluation.
#[derive(Debug, Clone)]
pub struct ResultRow {
    /// Generation seed; `None` for edge-list sources.
    pub seed: Option<u64>,
    pub strategy: Strategy,
    pub backend: Backend,
    pub n: usize,
    pub c: usize,
    pub p: f64,
    pub lambda1: f64,
    pub inv_lambda1: f64,
    /// Winning threshold level; empty for strategies without one.
    pub k_star: Option<usize>,
    /// Hamming distance to the previous budget's set; empty at the first.
    pub d_hm: Option<usize>,
    /// Pinned node ids, ascending, `;`-joined in the file.
    pub set: Vec<usize>,
}

/// One `summary.csv` row: scalar figures of one (seed, strategy) curve.
#[derive(Debug, Clone)]
pub struct SummaryRow {
    pub seed: Option<u64>,
    pub strategy: Strategy,
    pub backend: Backend,
    pub n: usize,
    pub omega: f64,
    pub delta: f64,
    /// Improvement over the best suboptimal baseline of the same seed, in
    /// percent; empty when the run had no centrality baselines.
    pub d_omega: Option<f64>,
    pub d_delta: Option<f64>,
}

/// Flatten an evaluated curve into result rows.
pub fn curve_rows(curve: &EffectivenessCurve, seed: Option<u64>) -> Vec<ResultRow> {
    curve
        .records
        .iter()
        .map(|r| ResultRow {
            seed,
            strategy: curve.strategy,
            backend: curve.backend,
            n: curve.n,
            c: r.c,
            p: r.p,
            lambda1: r.evaluation.lambda1,
            inv_lambda1: r.evaluation.inverse,
            k_star: r.k_star,
            d_hm: r.d_hm,
            set: r.pinned.clone(),
        })
        .collect()
}

fn opt_num<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

/// Render `results.csv` (header + rows, `\n` line ends).
pub fn render_results(rows: &[ResultRow]) -> String {
    let mut s = String::with_capacity(64 * (rows.len() + 1));
    s.push_str(RESULTS_HEADER);
    s.push('\n');
    for r in rows {
        let set: Vec<String> = r.set.iter().map(usize::to_string).collect();
        writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{}",
            opt_num(&r.seed),
            r.strategy,
            r.backend,
            r.n,
            r.c,
            sig(r.p),
            sig(r.lambda1),
            sig(r.inv_lambda1),
            opt_num(&r.k_star),
            opt_num(&r.d_hm),
            set.join(";")
        )
        .unwrap();
    }
    s
}

/// Render `summary.csv`.
pub fn render_summary(rows: &[SummaryRow]) -> String {
    let mut s = String::new();
    s.push_str(SUMMARY_HEADER);
    s.push('\n');
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            opt_num(&r.seed),
            r.strategy,
            r.backend,
            r.n,
            sig(r.omega),
            sig(r.delta),
            r.d_omega.map(sig).unwrap_or_default(),
            r.d_delta.map(sig).unwrap_or_default(),
        )
        .unwrap();
    }
    s
}

/// The slice of a results row the plotter needs.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotPoint {
    pub strategy: String,
    pub c: usize,
    pub p: f64,
    pub inv_lambda1: f64,
}

/// Parse a `results.csv` document back into plot points.
///
/// The header must match [`RESULTS_HEADER`]; any malformed row is an error
/// naming its (1-based) line number.
pub fn parse_results(text: &str) -> Result<Vec<PlotPoint>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == RESULTS_HEADER => {}
        Some((_, header)) => bail!("row 1: expected header '{RESULTS_HEADER}', got '{header}'"),
        None => bail!("empty results file"),
    }
    let mut points = Vec::new();
    for (idx, line) in lines {
        let row = idx + 1;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 11 {
            bail!("row {row}: expected 11 fields, got {}", fields.len());
        }
        let c: usize = fields[4].parse().with_context(|| format!("row {row}: bad c '{}'", fields[4]))?;
        let p: f64 = fields[5].parse().with_context(|| format!("row {row}: bad p '{}'", fields[5]))?;
        let inv: f64 = fields[7]
            .parse()
            .with_context(|| format!("row {row}: bad inv_lambda1 '{}'", fields[7]))?;
        if fields[1].is_empty() {
            bail!("row {row}: empty strategy field");
        }
        if !(p.is_finite() && inv.is_finite()) {
            bail!("row {row}: non-finite value");
        }
        points.push(PlotPoint {
            strategy: fields[1].to_owned(),
            c,
            p,
            inv_lambda1: inv,
        });
    }
    if points.is_empty() {
        bail!("results file has no data rows");
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_keeps_twelve_significant_digits() {
        assert_eq!(sig(0.0), "0");
        assert_eq!(sig(1.5), "1.50000000000");
        assert_eq!(sig(2.0 / 3.0), "0.666666666667");
        assert_eq!(sig(123456.0), "123456.000000");
        assert_eq!(sig(-0.25), "-0.250000000000");
        assert_eq!(sig(1e-3), "0.00100000000000");
        // Large magnitudes degrade to integer precision but stay plain.
        assert_eq!(sig(1e13), "10000000000000");
    }

    #[test]
    fn results_round_trip_through_the_parser() {
        let rows = vec![
            ResultRow {
                seed: Some(3),
                strategy: Strategy::A2,
                backend: Backend::Annealed,
                n: 5,
                c: 1,
                p: 0.2,
                lambda1: 2.0 / 3.0,
                inv_lambda1: 1.5,
                k_star: Some(1),
                d_hm: None,
                set: vec![0],
            },
            ResultRow {
                seed: Some(3),
                strategy: Strategy::A2,
                backend: Backend::Annealed,
                n: 5,
                c: 2,
                p: 0.4,
                lambda1: 1.5,
                inv_lambda1: 2.0 / 3.0,
                k_star: Some(2),
                d_hm: Some(3),
                set: vec![0, 4],
            },
        ];
        let text = render_results(&rows);
        let first = text.lines().nth(1).unwrap();
        assert_eq!(first, "3,A2,annealed,5,1,0.200000000000,0.666666666667,1.50000000000,1,,0");
        let points = parse_results(&text).unwrap();
        assert_eq!(points.len(), 2);
        assert_eq!(points[1].c, 2);
        assert_eq!(points[1].strategy, "A2");
        // Round trip is exact only to the 12 digits that were written.
        assert!((points[1].inv_lambda1 - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn parser_flags_malformed_rows_with_their_number() {
        let text = format!("{RESULTS_HEADER}\n1,A2,annealed,5,1,0.2,0.5,2,,,0\n1,A2,annealed,5,oops\n");
        let err = parse_results(&text).unwrap_err().to_string();
        assert!(err.contains("row 3"), "{err}");

        let text = format!("{RESULTS_HEADER}\n1,A2,annealed,5,NOT,0.2,0.5,2,,,0\n");
        let err = format!("{:#}", parse_results(&text).unwrap_err());
        assert!(err.contains("row 2") && err.contains("bad c"), "{err}");

        let err = parse_results("wrong,header\n").unwrap_err().to_string();
        assert!(err.contains("row 1"), "{err}");
    }

    #[test]
    fn summary_renders_empty_ratios_as_blank() {
        let rows = vec![SummaryRow {
            seed: None,
            strategy: Strategy::Degree,
            backend: Backend::Quenched,
            n: 9,
            omega: 1.25,
            delta: 0.5,
            d_omega: None,
            d_delta: None,
        }];
        let text = render_summary(&rows);
        assert_eq!(text.lines().nth(1).unwrap(), ",DC,quenched,9,1.25000000000,0.500000000000,,");
    }
}
