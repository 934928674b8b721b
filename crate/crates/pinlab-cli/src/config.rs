//! Flat `key = value` experiment configuration.
//!
//! One key per line, `#` comments, no nesting. Every run copies its
//! effective configuration into the output directory as `config.used`, and
//! that file parses back into the identical [`ExperimentConfig`], so any
//! result directory can be re-run verbatim.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, ensure, Context, Result};
use pinlab_core::degree_model::ConnectPolicy;
use pinlab_core::spectral::EvalBackend;
use pinlab_core::Strategy;

/// Where the networks come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    /// Sampled from the saturated/truncated power-law degree model.
    Synthetic,
    /// Loaded from an edge-list file.
    EdgeList(PathBuf),
}

/// Evaluation backend, possibly deferred to the per-source default
/// (annealed for synthetic networks, quenched for edge lists).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendChoice {
    Auto,
    Fixed(EvalBackend),
}

impl BackendChoice {
    /// The backend this choice means for the given source.
    pub fn resolve(self, source: &Source) -> EvalBackend {
        match self {
            BackendChoice::Fixed(b) => b,
            BackendChoice::Auto => match source {
                Source::Synthetic => EvalBackend::Annealed,
                Source::EdgeList(_) => EvalBackend::Quenched,
            },
        }
    }
}

/// A full experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub source: Source,
    /// Node count for synthetic networks.
    pub n: usize,
    /// Power-law exponent γ.
    pub gamma: f64,
    /// Saturation degree k_sat of the degree model.
    pub k_sat: f64,
    /// Cutoff degree k_cut of the degree model (`inf` disables the cutoff).
    pub k_cut: f64,
    /// Optional support bounds; `None` means the widest simple-graph
    /// support `[1, n-1]`. Setting both to the same value gives a
    /// point-mass (regular) degree sequence.
    pub k_min: Option<usize>,
    pub k_max: Option<usize>,
    /// Generation seeds; one network per seed for synthetic sources.
    pub seeds: Vec<u64>,
    /// Strategies to run, kept in canonical order.
    pub strategies: Vec<Strategy>,
    /// Largest pinned fraction; budgets run `c = 1..=floor(p_max * N)`.
    pub p_max: f64,
    pub backend: BackendChoice,
    /// Connectivity policy; `None` defers to the per-source default
    /// (retry_new_seed for synthetic, take_lcc for edge lists).
    pub connectivity: Option<ConnectPolicy>,
    /// Output directory; the `--out` flag overrides it.
    pub out: Option<PathBuf>,
    /// Evaluation-tolerance overrides; `None` keeps the solver defaults.
    pub annealed_tol: Option<f64>,
    pub quenched_tol: Option<f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            source: Source::Synthetic,
            n: 2000,
            gamma: 1.5,
            k_sat: 20.0,
            k_cut: 100.0,
            k_min: None,
            k_max: None,
            seeds: (1..=10).collect(),
            strategies: vec![
                Strategy::A1,
                Strategy::A2,
                Strategy::Degree,
                Strategy::Betweenness,
                Strategy::Coreness,
                Strategy::CycleRatio,
            ],
            p_max: 0.3,
            backend: BackendChoice::Auto,
            connectivity: None,
            out: None,
            annealed_tol: None,
            quenched_tol: None,
        }
    }
}

impl ExperimentConfig {
    /// Parse a flat key=value document. Unknown or repeated keys are errors;
    /// keys left out keep their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        let mut seen: Vec<String> = Vec::new();
        let mut edge_list: Option<PathBuf> = None;
        let mut source_kind: Option<&str> = None;

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("config line {lineno}: expected 'key = value', got '{raw}'"))?;
            let key = key.trim();
            let value = value.trim();
            if seen.iter().any(|k| k == key) {
                bail!("config line {lineno}: key '{key}' given twice");
            }
            seen.push(key.to_owned());
            let ctx = |what: &str| format!("config line {lineno}: bad {what} '{value}'");
            match key {
                "source" => match value {
                    "synthetic" | "edge_list" => source_kind = Some(if value == "synthetic" { "synthetic" } else { "edge_list" }),
                    _ => bail!("config line {lineno}: source must be 'synthetic' or 'edge_list', got '{value}'"),
                },
                "edge_list" => edge_list = Some(PathBuf::from(value)),
                "n" => cfg.n = value.parse().with_context(|| ctx("node count"))?,
                "gamma" => cfg.gamma = value.parse().with_context(|| ctx("gamma"))?,
                "k_sat" => cfg.k_sat = value.parse().with_context(|| ctx("k_sat"))?,
                "k_cut" => {
                    cfg.k_cut = if value == "inf" {
                        f64::INFINITY
                    } else {
                        value.parse().with_context(|| ctx("k_cut"))?
                    }
                }
                "k_min" => cfg.k_min = Some(value.parse().with_context(|| ctx("k_min"))?),
                "k_max" => cfg.k_max = Some(value.parse().with_context(|| ctx("k_max"))?),
                "seeds" => {
                    cfg.seeds = split_list(value)
                        .map(|t| t.parse::<u64>().map_err(|e| anyhow!("config line {lineno}: bad seed '{t}': {e}")))
                        .collect::<Result<_>>()?
                }
                "strategies" => {
                    cfg.strategies = split_list(value)
                        .map(|t| Strategy::from_str(t).map_err(|e| anyhow!("config line {lineno}: {e}")))
                        .collect::<Result<_>>()?
                }
                "p_max" => cfg.p_max = value.parse().with_context(|| ctx("p_max"))?,
                "backend" => {
                    cfg.backend = if value == "auto" {
                        BackendChoice::Auto
                    } else {
                        BackendChoice::Fixed(EvalBackend::from_str(value).map_err(|e| anyhow!("config line {lineno}: {e}"))?)
                    }
                }
                "connectivity" => {
                    cfg.connectivity =
                        Some(ConnectPolicy::from_str(value).map_err(|e| anyhow!("config line {lineno}: {e}"))?)
                }
                "out" => cfg.out = Some(PathBuf::from(value)),
                "annealed_tol" => cfg.annealed_tol = Some(value.parse().with_context(|| ctx("tolerance"))?),
                "quenched_tol" => cfg.quenched_tol = Some(value.parse().with_context(|| ctx("tolerance"))?),
                other => bail!("config line {lineno}: unknown key '{other}'"),
            }
        }

        cfg.source = match (source_kind, edge_list) {
            (Some("edge_list"), Some(path)) => Source::EdgeList(path),
            (Some("edge_list"), None) => bail!("source = edge_list needs an edge_list = <path> line"),
            (None, Some(path)) => Source::EdgeList(path),
            _ => Source::Synthetic,
        };
        cfg.normalize();
        Ok(cfg)
    }

    /// Render the document form; `parse(render())` reproduces `self` except
    /// for the output directory, which is deliberately omitted: where results
    /// land is an invocation detail, so rendered configs (and the hashes
    /// derived from them) stay identical across output locations.
    pub fn render(&self) -> String {
        let mut s = String::new();
        if let Some(t) = self.annealed_tol {
            writeln!(s, "annealed_tol = {t}").unwrap();
        }
        writeln!(s, "backend = {}", match self.backend {
            BackendChoice::Auto => "auto".to_owned(),
            BackendChoice::Fixed(b) => b.to_string(),
        })
        .unwrap();
        if let Some(p) = self.connectivity {
            writeln!(s, "connectivity = {p}").unwrap();
        }
        if let Source::EdgeList(path) = &self.source {
            writeln!(s, "edge_list = {}", path.display()).unwrap();
        }
        writeln!(s, "gamma = {}", self.gamma).unwrap();
        if self.k_cut.is_infinite() {
            writeln!(s, "k_cut = inf").unwrap();
        } else {
            writeln!(s, "k_cut = {}", self.k_cut).unwrap();
        }
        if let Some(k) = self.k_max {
            writeln!(s, "k_max = {k}").unwrap();
        }
        if let Some(k) = self.k_min {
            writeln!(s, "k_min = {k}").unwrap();
        }
        writeln!(s, "k_sat = {}", self.k_sat).unwrap();
        writeln!(s, "n = {}", self.n).unwrap();
        writeln!(s, "p_max = {}", self.p_max).unwrap();
        if let Some(t) = self.quenched_tol {
            writeln!(s, "quenched_tol = {t}").unwrap();
        }
        let seeds: Vec<String> = self.seeds.iter().map(u64::to_string).collect();
        writeln!(s, "seeds = {}", seeds.join(",")).unwrap();
        writeln!(s, "source = {}", match self.source {
            Source::Synthetic => "synthetic",
            Source::EdgeList(_) => "edge_list",
        })
        .unwrap();
        let strategies: Vec<&str> = self.strategies.iter().map(|st| st.tag()).collect();
        writeln!(s, "strategies = {}", strategies.join(",")).unwrap();
        s
    }

    /// Check the cross-field invariants. Call after parsing + overrides.
    pub fn validate(&self) -> Result<()> {
        ensure!(!self.strategies.is_empty(), "at least one strategy is required");
        ensure!(
            self.p_max > 0.0 && self.p_max <= 1.0,
            "p_max must lie in (0, 1], got {}",
            self.p_max
        );
        if self.source == Source::Synthetic {
            ensure!(!self.seeds.is_empty(), "synthetic runs need at least one seed");
            ensure!(self.n >= 3, "synthetic runs need n >= 3, got {}", self.n);
            ensure!(
                self.p_max * self.n as f64 >= 1.0,
                "p_max * n = {} leaves no budget to pin (need >= 1)",
                self.p_max * self.n as f64
            );
            ensure!(self.gamma > 0.0, "gamma must be positive, got {}", self.gamma);
            ensure!(self.k_sat >= 1.0, "k_sat must be >= 1, got {}", self.k_sat);
            ensure!(self.k_cut > 0.0, "k_cut must be positive, got {}", self.k_cut);
            if let (Some(lo), Some(hi)) = (self.k_min, self.k_max) {
                ensure!(lo <= hi, "k_min = {lo} exceeds k_max = {hi}");
            }
            if let Some(hi) = self.k_max {
                ensure!(hi < self.n, "k_max = {hi} needs n > k_max for a simple graph");
            }
        }
        let mut sorted = self.seeds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        ensure!(sorted.len() == self.seeds.len(), "seeds contain duplicates");
        Ok(())
    }

    /// The largest budget for a graph of `n` nodes: `floor(p_max * n)`,
    /// clamped so at least one node stays free.
    pub fn budget_cap(&self, n: usize) -> Result<usize> {
        let cap = (self.p_max * n as f64).floor() as usize;
        ensure!(cap >= 1, "p_max * N = {} leaves no budget to pin (need >= 1)", self.p_max * n as f64);
        Ok(cap.min(n - 1))
    }

    /// Canonical strategy order + dedup, so CSV layout never depends on the
    /// order strategies were listed in.
    fn normalize(&mut self) {
        self.strategies.sort_unstable();
        self.strategies.dedup();
    }

    /// Fold CLI flags over the config; flags win.
    pub fn apply_overrides(&mut self, ov: &Overrides) -> Result<()> {
        if !ov.seeds.is_empty() {
            self.seeds = ov.seeds.clone();
        }
        if let Some(b) = ov.backend {
            self.backend = BackendChoice::Fixed(b);
        }
        if let Some(p) = ov.p_max {
            self.p_max = p;
        }
        if let Some(list) = &ov.strategies {
            self.strategies = list
                .iter()
                .map(|t| Strategy::from_str(t).map_err(|e| anyhow!(e)))
                .collect::<Result<_>>()?;
        }
        if let Some(lcc) = ov.lcc {
            self.connectivity = Some(if lcc { ConnectPolicy::TakeLcc } else { ConnectPolicy::RetryNewSeed });
        }
        if let Some(out) = &ov.out {
            self.out = Some(out.clone());
        }
        self.normalize();
        Ok(())
    }

    /// The connectivity policy in effect for the configured source.
    pub fn policy(&self) -> ConnectPolicy {
        self.connectivity.unwrap_or(match self.source {
            Source::Synthetic => ConnectPolicy::RetryNewSeed,
            Source::EdgeList(_) => ConnectPolicy::TakeLcc,
        })
    }

    /// The output directory, which every writing command requires.
    pub fn out_dir(&self) -> Result<&PathBuf> {
        self.out
            .as_ref()
            .ok_or_else(|| anyhow!("no output directory: pass --out DIR or set 'out =' in the config"))
    }
}

/// CLI-flag overrides shared by the run-style subcommands.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seeds: Vec<u64>,
    pub backend: Option<EvalBackend>,
    pub p_max: Option<f64>,
    pub strategies: Option<Vec<String>>,
    /// `--lcc on` → take_lcc, `--lcc off` → retry_new_seed.
    pub lcc: Option<bool>,
    pub out: Option<PathBuf>,
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|t| !t.is_empty())
}

/// FNV-1a hash of the rendered config — a stable short fingerprint for
/// provenance files.
pub fn config_hash(cfg: &ExperimentConfig) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for byte in cfg.render().bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Load a config file, or start from defaults when no path is given.
pub fn load(path: Option<&PathBuf>) -> Result<ExperimentConfig> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
            ExperimentConfig::parse(&text).with_context(|| format!("parsing config {}", p.display()))
        }
        None => Ok(ExperimentConfig::default()),
    }
}
