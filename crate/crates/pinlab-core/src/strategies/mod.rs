//! Pinning-set selection strategies.
//!
//! Two families: the threshold strategies built on the degree histogram
//! ([`threshold`]: the closed-form rule and the iterative optimal rule),
//! and reference selectors used to benchmark them — exhaustive enumeration
//! ([`exhaustive`]), a brute-force greedy ([`bfg`]) and top-k centrality
//! baselines ([`centrality`]).
//!
//! Every selector breaks ties deterministically: equal-degree or equal-score
//! nodes by ascending id, equal-λ thresholds by the larger threshold, and
//! equal-λ subsets by lexicographic order. The annealed λ₁ depends on the
//! degree multiset only, so the id tie-breaks never change a reported value.

pub mod bfg;
pub mod centrality;
pub mod exhaustive;
pub mod threshold;

pub use bfg::select_bfg_curve;
pub use centrality::{
    rank_betweenness, rank_coreness, rank_cycle_ratio, rank_degree, top_k_curve, top_k_set, CentralityRanking,
};
pub use exhaustive::{exhaustive_annealed_degrees, select_exhaustive, ENUMERATION_CAP};
pub use threshold::{a1_curve, select_a1, select_a2_curve};

use crate::graph::PinningPartition;
use crate::spectral::SpectralResult;

/// Selector identity; the short tags double as CSV/CLI vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    /// Closed-form threshold rule (largest k with α(k) ≤ c).
    A1,
    /// Iterative optimal threshold rule.
    A2,
    /// Exhaustive subset enumeration.
    Exhaustive,
    /// Brute-force greedy on λ₁.
    Bfg,
    /// Degree centrality top-k.
    Degree,
    /// Betweenness centrality top-k.
    Betweenness,
    /// Coreness centrality top-k.
    Coreness,
    /// Cycle-ratio centrality top-k.
    CycleRatio,
}

impl Strategy {
    pub const ALL: [Strategy; 8] = [
        Strategy::A1,
        Strategy::A2,
        Strategy::Exhaustive,
        Strategy::Bfg,
        Strategy::Degree,
        Strategy::Betweenness,
        Strategy::Coreness,
        Strategy::CycleRatio,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Strategy::A1 => "A1",
            Strategy::A2 => "A2",
            Strategy::Exhaustive => "EXH",
            Strategy::Bfg => "BFG",
            Strategy::Degree => "DC",
            Strategy::Betweenness => "BC",
            Strategy::Coreness => "CC",
            Strategy::CycleRatio => "CR",
        }
    }

    /// Top-k centrality baselines (as opposed to λ-driven selectors).
    pub fn is_centrality(self) -> bool {
        matches!(
            self,
            Strategy::Degree | Strategy::Betweenness | Strategy::Coreness | Strategy::CycleRatio
        )
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "A1" => Ok(Strategy::A1),
            "A2" => Ok(Strategy::A2),
            "EXH" => Ok(Strategy::Exhaustive),
            "BFG" => Ok(Strategy::Bfg),
            "DC" => Ok(Strategy::Degree),
            "BC" => Ok(Strategy::Betweenness),
            "CC" => Ok(Strategy::Coreness),
            "CR" => Ok(Strategy::CycleRatio),
            other => Err(format!(
                "unknown strategy '{other}' (expected one of A1, A2, EXH, BFG, DC, BC, CC, CR)"
            )),
        }
    }
}

/// One budget level of a strategy's output.
#[derive(Debug, Clone)]
pub struct BudgetRecord {
    /// Budget `c = |P|`.
    pub c: usize,
    pub partition: PinningPartition,
    /// λ₁ as computed at selection time (annealed for the threshold and
    /// exhaustive-annealed strategies; the caller's backend otherwise).
    pub selection: SpectralResult,
    /// Winning threshold level, where the strategy has one.
    pub k_star: Option<usize>,
}

/// Per-budget records for `c = 1..=c_max` under one strategy.
#[derive(Debug, Clone)]
pub struct StrategyOutput {
    pub strategy: Strategy,
    pub records: Vec<BudgetRecord>,
}

impl StrategyOutput {
    pub fn c_max(&self) -> usize {
        self.records.last().map_or(0, |r| r.c)
    }
}
