//! The selection pipeline shared by `select` and `sweep`: resolve the
//! network source, run every configured strategy per network, evaluate the
//! curves under one backend, and flatten everything into CSV rows.
//!
//! A strategy that fails (enumeration cap, solver trouble) is recorded and
//! skipped; the remaining strategies still produce output.

use std::fs::File;
use std::io::BufReader;

use anyhow::{bail, ensure, Context, Result};
use pinlab_core::degree_model::{
    connect_or_regenerate, ConnectPolicy, DegreeDistribution, GenReport, DEFAULT_CONNECT_ATTEMPTS,
};
use pinlab_core::graph::{largest_connected_component, load_edge_list, IngestReport};
use pinlab_core::metrics::{
    best_suboptimal, evaluate_curve_with, improvement_ratios, summarize, CurveSummary, EffectivenessCurve,
};
use pinlab_core::spectral::EvalBackend;
use pinlab_core::strategies::{
    a1_curve, rank_betweenness, rank_coreness, rank_cycle_ratio, rank_degree, select_a2_curve, select_bfg_curve,
    select_exhaustive, top_k_curve, BudgetRecord, StrategyOutput,
};
use pinlab_core::{DegreeHistogram, Graph, Strategy};

use crate::config::{ExperimentConfig, Source};
use crate::csvio::{curve_rows, ResultRow, SummaryRow};

/// One network to run strategies on, with its provenance.
#[derive(Debug)]
pub struct SourceGraph {
    /// Generation seed; `None` for edge-list sources.
    pub seed: Option<u64>,
    pub graph: Graph,
    /// Sampling provenance for synthetic networks.
    pub gen: Option<GenReport>,
    /// Ingestion counters for edge-list networks, plus nodes dropped by the
    /// largest-component reduction.
    pub ingest: Option<(IngestReport, usize)>,
}

/// Materialize the configured source into concrete graphs.
pub fn build_sources(cfg: &ExperimentConfig) -> Result<Vec<SourceGraph>> {
    match &cfg.source {
        Source::Synthetic => {
            let dist = match (cfg.k_min, cfg.k_max) {
                (None, None) => DegreeDistribution::with_default_support(cfg.gamma, cfg.k_sat, cfg.k_cut, cfg.n),
                (lo, hi) => DegreeDistribution::new(
                    cfg.gamma,
                    cfg.k_sat,
                    cfg.k_cut,
                    lo.unwrap_or(1),
                    hi.unwrap_or(cfg.n - 1),
                ),
            }
            .context("building the degree distribution")?;
            cfg.seeds
                .iter()
                .map(|&seed| {
                    let (graph, gen) =
                        connect_or_regenerate(&dist, cfg.n, seed, cfg.policy(), DEFAULT_CONNECT_ATTEMPTS)
                            .with_context(|| format!("sampling a connected network for seed {seed}"))?;
                    Ok(SourceGraph {
                        seed: Some(seed),
                        graph,
                        gen: Some(gen),
                        ingest: None,
                    })
                })
                .collect()
        }
        Source::EdgeList(path) => {
            let file = File::open(path).with_context(|| format!("opening edge list {}", path.display()))?;
            let (graph, report) =
                load_edge_list(BufReader::new(file)).with_context(|| format!("parsing {}", path.display()))?;
            let (graph, dropped) = match cfg.policy() {
                ConnectPolicy::TakeLcc => {
                    let n_before = graph.node_count();
                    if graph.is_connected() {
                        (graph, 0)
                    } else {
                        let (lcc, _) = largest_connected_component(&graph);
                        let kept = lcc.node_count();
                        (lcc, n_before - kept)
                    }
                }
                ConnectPolicy::RetryNewSeed => {
                    ensure!(
                        graph.is_connected(),
                        "{} is not connected; rerun with --lcc on to keep the largest component",
                        path.display()
                    );
                    (graph, 0)
                }
            };
            Ok(vec![SourceGraph {
                seed: None,
                graph,
                gen: None,
                ingest: Some((report, dropped)),
            }])
        }
    }
}

/// Run one strategy on one network up to budget `c_max`.
pub fn run_strategy(
    g: &Graph,
    hist: &DegreeHistogram,
    strategy: Strategy,
    c_max: usize,
    backend: EvalBackend,
) -> pinlab_core::Result<StrategyOutput> {
    match strategy {
        Strategy::A1 => a1_curve(hist, c_max),
        Strategy::A2 => select_a2_curve(hist, c_max),
        Strategy::Exhaustive => {
            let mut records = Vec::with_capacity(c_max);
            for c in 1..=c_max {
                let (partition, selection) = select_exhaustive(g, c, backend).map_err(|e| e.at_budget(c))?;
                records.push(BudgetRecord {
                    c,
                    partition,
                    selection,
                    k_star: None,
                });
            }
            Ok(StrategyOutput {
                strategy: Strategy::Exhaustive,
                records,
            })
        }
        Strategy::Bfg => select_bfg_curve(g, c_max, backend),
        Strategy::Degree => top_k_curve(g, &rank_degree(g), c_max, backend),
        Strategy::Betweenness => top_k_curve(g, &rank_betweenness(g), c_max, backend),
        Strategy::Coreness => top_k_curve(g, &rank_coreness(g), c_max, backend),
        Strategy::CycleRatio => top_k_curve(g, &rank_cycle_ratio(g)?, c_max, backend),
    }
}

/// A strategy that could not produce its curve on one network.
#[derive(Debug, Clone)]
pub struct Failure {
    pub seed: Option<u64>,
    pub strategy: Strategy,
    pub message: String,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.seed {
            Some(seed) => write!(f, "seed {seed}, {}: {}", self.strategy, self.message),
            None => write!(f, "{}: {}", self.strategy, self.message),
        }
    }
}

/// Everything a select run produces, ready for the CSV writers.
#[derive(Debug)]
pub struct SelectOutcome {
    pub rows: Vec<ResultRow>,
    pub summaries: Vec<SummaryRow>,
    pub failures: Vec<Failure>,
    /// The networks the run used, for metadata reporting.
    pub sources: Vec<SourceGraph>,
}

/// Evaluate every configured strategy on every configured network.
pub fn run_select(cfg: &ExperimentConfig) -> Result<SelectOutcome> {
    cfg.validate()?;
    let backend = cfg.backend.resolve(&cfg.source);
    let tol = match backend {
        EvalBackend::Annealed => cfg.annealed_tol,
        EvalBackend::Quenched => cfg.quenched_tol,
    };
    let sources = build_sources(cfg)?;

    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    let mut failures = Vec::new();
    for source in &sources {
        let g = &source.graph;
        let n = g.node_count();
        let c_max = cfg.budget_cap(n)?;
        let hist = DegreeHistogram::from_graph(g).expect("connected graphs are nonempty");

        let mut curves: Vec<EffectivenessCurve> = Vec::new();
        for &strategy in &cfg.strategies {
            let curve = run_strategy(g, &hist, strategy, c_max, backend)
                .and_then(|output| evaluate_curve_with(&output, g, backend, tol));
            match curve {
                Ok(curve) => curves.push(curve.with_seeds(source.seed)),
                Err(e) => failures.push(Failure {
                    seed: source.seed,
                    strategy,
                    message: e.to_string(),
                }),
            }
        }

        let summarized: Vec<(Strategy, CurveSummary)> = curves
            .iter()
            .map(|curve| Ok((curve.strategy, summarize(curve)?)))
            .collect::<Result<_>>()?;
        let baseline = best_suboptimal(
            summarized
                .iter()
                .filter(|(s, _)| s.is_centrality())
                .map(|&(_, summary)| summary),
        );
        for curve in &curves {
            rows.extend(curve_rows(curve, source.seed));
        }
        for &(strategy, summary) in &summarized {
            let ratios = baseline.map(|base| improvement_ratios(summary, base)).transpose()?;
            summaries.push(SummaryRow {
                seed: source.seed,
                strategy,
                backend: backend.tag(),
                n,
                omega: summary.omega,
                delta: summary.delta,
                d_omega: ratios.map(|r| r.d_omega),
                d_delta: ratios.map(|r| r.d_delta),
            });
        }
    }
    if rows.is_empty() {
        bail!(
            "every strategy failed: {}",
            failures.iter().map(Failure::to_string).collect::<Vec<_>>().join("; ")
        );
    }
    Ok(SelectOutcome {
        rows,
        summaries,
        failures,
        sources,
    })
}
