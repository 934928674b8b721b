//! Brute-force greedy baseline: grow the pinning set one node at a time,
//! each step taking the single addition that maximizes λ₁.
//!
//! The produced sets are nested by construction, so one pass yields the
//! whole budget curve. Every step solves an eigenproblem per surviving
//! candidate, which makes this by far the most expensive baseline; it is
//! kept simple and exact rather than incremental.

use crate::graph::{Graph, PinningPartition};
use crate::par;
use crate::spectral::{evaluate, EvalBackend};
use crate::strategies::{BudgetRecord, Strategy, StrategyOutput};
use crate::{Error, Result};

/// Greedy curve for budgets `1..=c_max` under the chosen backend.
pub fn select_bfg_curve(g: &Graph, c_max: usize, backend: EvalBackend) -> Result<StrategyOutput> {
    let n = g.node_count();
    if c_max < 1 || c_max >= n {
        return Err(Error::BadBudget { budget: c_max, nodes: n });
    }
    let mut pinned = vec![false; n];
    let mut chosen: Vec<usize> = Vec::with_capacity(c_max);
    let mut records = Vec::with_capacity(c_max);
    for c in 1..=c_max {
        let candidates: Vec<usize> = (0..n).filter(|&v| !pinned[v]).collect();
        let lambdas: Vec<Result<f64>> = par::map_slice(&candidates, |&v| {
            let trial = PinningPartition::new(chosen.iter().copied().chain([v]), n);
            Ok(evaluate(g, &trial, backend).map_err(|e| e.at_budget(c))?.lambda1)
        });
        // Strict improvement keeps the first — smallest-id — maximizer.
        let mut winner = None;
        for (&v, lambda) in candidates.iter().zip(lambdas) {
            let lambda = lambda?;
            if winner.map_or(true, |(_, best)| lambda > best) {
                winner = Some((v, lambda));
            }
        }
        let (v, _) = winner.expect("candidate list is nonempty while c < n");
        pinned[v] = true;
        chosen.push(v);
        let partition = PinningPartition::new(chosen.iter().copied(), n);
        let selection = evaluate(g, &partition, backend).map_err(|e| e.at_budget(c))?;
        records.push(BudgetRecord {
            c,
            partition,
            selection,
            k_star: None,
        });
    }
    Ok(StrategyOutput {
        strategy: Strategy::Bfg,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn path3_picks_center_then_endpoint() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let out = select_bfg_curve(&g, 2, EvalBackend::Quenched).unwrap();
        assert_eq!(out.records[0].partition.pinned(), &[1]);
        assert_relative_eq!(out.records[0].selection.lambda1, 1.0, epsilon = 1e-10);
        assert_eq!(out.records[1].partition.pinned(), &[0, 1]);
        assert_relative_eq!(out.records[1].selection.lambda1, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn triangle_tie_takes_smallest_id() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let out = select_bfg_curve(&g, 1, EvalBackend::Quenched).unwrap();
        assert_eq!(out.records[0].partition.pinned(), &[0]);
    }

    #[test]
    fn sets_are_nested_across_budgets() {
        let g = Graph::from_edges(
            8,
            [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6), (6, 3), (6, 7)],
        )
        .unwrap();
        let out = select_bfg_curve(&g, 4, EvalBackend::Quenched).unwrap();
        for w in out.records.windows(2) {
            let prev = w[0].partition.pinned();
            let next = w[1].partition.pinned();
            assert!(prev.iter().all(|v| next.contains(v)));
            assert_eq!(next.len(), prev.len() + 1);
        }
    }

    #[test]
    fn annealed_backend_is_supported() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (1, 3)]).unwrap();
        let out = select_bfg_curve(&g, 2, EvalBackend::Annealed).unwrap();
        assert_eq!(out.records.len(), 2);
        for r in &out.records {
            assert!(r.selection.lambda1 > 0.0);
            assert!(r.k_star.is_none());
        }
    }

    #[test]
    fn rejects_degenerate_budgets() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            select_bfg_curve(&g, 0, EvalBackend::Quenched),
            Err(Error::BadBudget { .. })
        ));
        assert!(matches!(
            select_bfg_curve(&g, 3, EvalBackend::Quenched),
            Err(Error::BadBudget { .. })
        ));
    }
}
