//! Effectiveness curves and scalar summaries of pinning performance.
//!
//! A strategy's per-budget output turns into an [`EffectivenessCurve`] by
//! evaluating every pinned set under one explicit backend; the curve then
//! collapses into the two scalar figures of merit — pinning efficiency ω
//! (mean inverse synchronizability across budgets) and end-point
//! effectiveness δ (inverse synchronizability at the largest budget) — and
//! into relative improvement ratios against a baseline. Set-to-set churn
//! along a curve is measured by the Hamming distance between consecutive
//! pinned sets.

use crate::graph::Graph;
use crate::spectral::{evaluate, evaluate_with, Backend, EvalBackend, SpectralResult};
use crate::strategies::{Strategy, StrategyOutput};
use crate::{par, Error, Result};

/// One budget level of an evaluated curve.
#[derive(Debug, Clone)]
pub struct CurveRecord {
    /// Budget `c = |P|`.
    pub c: usize,
    /// Pinned fraction `c / N`.
    pub p: f64,
    /// Pinned node ids, ascending.
    pub pinned: Vec<usize>,
    /// λ₁ and 1/λ₁ under the curve's evaluation backend.
    pub evaluation: SpectralResult,
    /// λ₁ as computed when the set was selected (kept separately; selection
    /// may have used a different backend than the evaluation).
    pub selection: SpectralResult,
    /// Hamming distance to the previous record's pinned set; absent at the
    /// first record.
    pub d_hm: Option<usize>,
    /// Winning threshold level, for strategies that have one.
    pub k_star: Option<usize>,
}

/// A strategy's effectiveness curve: its pinned sets for `c = 1..=c_max`,
/// all re-evaluated under one backend.
#[derive(Debug, Clone)]
pub struct EffectivenessCurve {
    pub strategy: Strategy,
    /// Backend every record's `evaluation` came from.
    pub backend: Backend,
    /// Node count of the evaluated graph.
    pub n: usize,
    pub records: Vec<CurveRecord>,
    /// Seeds that produced the underlying graph(s); attached by the caller,
    /// empty when not applicable.
    pub seeds: Vec<u64>,
}

impl EffectivenessCurve {
    pub fn with_seeds(mut self, seeds: impl IntoIterator<Item = u64>) -> Self {
        self.seeds = seeds.into_iter().collect();
        self
    }

    /// The `1/λ₁` series in budget order.
    pub fn inverses(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.evaluation.inverse).collect()
    }
}

/// Evaluate every record of `output` on `g` under `backend`.
///
/// Selection-time results are reused when they already come from the
/// requested backend and recomputed otherwise, so a curve never mixes
/// backends. Solver failures are annotated with the budget they occurred at.
pub fn evaluate_curve(
    output: &StrategyOutput,
    g: &Graph,
    backend: EvalBackend,
) -> Result<EffectivenessCurve> {
    evaluate_curve_with(output, g, backend, None)
}

/// [`evaluate_curve`] with an explicit solver tolerance.
///
/// Passing `Some(tol)` disables the reuse of selection-time results and
/// recomputes every record at that tolerance; `None` keeps the default
/// behaviour.
pub fn evaluate_curve_with(
    output: &StrategyOutput,
    g: &Graph,
    backend: EvalBackend,
    tol: Option<f64>,
) -> Result<EffectivenessCurve> {
    let n = g.node_count();
    let evaluations: Vec<Result<SpectralResult>> = par::map_slice(&output.records, |record| {
        if tol.is_none() && record.selection.backend == backend.tag() {
            Ok(record.selection.clone())
        } else {
            match tol {
                Some(t) => evaluate_with(g, &record.partition, backend, t),
                None => evaluate(g, &record.partition, backend),
            }
            .map_err(|e| e.at_budget(record.c))
        }
    });
    let mut records = Vec::with_capacity(output.records.len());
    let mut previous: Option<&[usize]> = None;
    for (record, evaluation) in output.records.iter().zip(evaluations) {
        let pinned = record.partition.pinned().to_vec();
        records.push(CurveRecord {
            c: record.c,
            p: record.c as f64 / n as f64,
            d_hm: previous.map(|prev| hamming(prev, &pinned)),
            evaluation: evaluation?,
            selection: record.selection.clone(),
            k_star: record.k_star,
            pinned: record.partition.pinned().to_vec(),
        });
        previous = Some(record.partition.pinned());
    }
    Ok(EffectivenessCurve {
        strategy: output.strategy,
        backend: backend.tag(),
        n,
        records,
        seeds: Vec::new(),
    })
}

/// Symmetric-difference cardinality |A Δ B| of two node sets given as
/// ascending-sorted slices.
pub fn hamming(a: &[usize], b: &[usize]) -> usize {
    debug_assert!(a.windows(2).all(|w| w[0] < w[1]), "sets must be sorted");
    debug_assert!(b.windows(2).all(|w| w[0] < w[1]), "sets must be sorted");
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    a.len() + b.len() - 2 * common
}

/// Pinning efficiency ω: the arithmetic mean of `1/λ₁` over the whole curve.
pub fn pinning_efficiency(curve: &EffectivenessCurve) -> Result<f64> {
    if curve.records.is_empty() {
        return Err(Error::EmptyCurve);
    }
    let sum: f64 = curve.records.iter().map(|r| r.evaluation.inverse).sum();
    Ok(sum / curve.records.len() as f64)
}

/// End-point effectiveness δ: `1/λ₁` at the largest budget on the curve.
pub fn endpoint_effectiveness(curve: &EffectivenessCurve) -> Result<f64> {
    curve
        .records
        .last()
        .map(|r| r.evaluation.inverse)
        .ok_or(Error::EmptyCurve)
}

/// The two scalar figures of merit of one curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSummary {
    pub omega: f64,
    pub delta: f64,
}

/// Compute ω and δ of a curve in one pass.
pub fn summarize(curve: &EffectivenessCurve) -> Result<CurveSummary> {
    Ok(CurveSummary {
        omega: pinning_efficiency(curve)?,
        delta: endpoint_effectiveness(curve)?,
    })
}

/// Relative improvement over a baseline, in percent. Positive when ours is
/// better (smaller), negative when worse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImprovementRatios {
    pub d_omega: f64,
    pub d_delta: f64,
}

/// `Δ_ω = (ω_sub − ω_ours)/ω_sub · 100%` and the analogous `Δ_δ`.
pub fn improvement_ratios(ours: CurveSummary, baseline: CurveSummary) -> Result<ImprovementRatios> {
    for value in [baseline.omega, baseline.delta] {
        if !(value > 0.0) {
            return Err(Error::NonPositiveBaseline { value });
        }
    }
    Ok(ImprovementRatios {
        d_omega: (baseline.omega - ours.omega) / baseline.omega * 100.0,
        d_delta: (baseline.delta - ours.delta) / baseline.delta * 100.0,
    })
}

/// The best-performing suboptimal baseline: per-metric minima of ω and δ
/// over the given summaries (smaller is better for both). `None` on an
/// empty iterator.
pub fn best_suboptimal(summaries: impl IntoIterator<Item = CurveSummary>) -> Option<CurveSummary> {
    summaries.into_iter().reduce(|best, s| CurveSummary {
        omega: best.omega.min(s.omega),
        delta: best.delta.min(s.delta),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DegreeHistogram;
    use crate::strategies::select_a2_curve;
    use approx::assert_relative_eq;
    use rand::Rng;

    /// Curve with fabricated λ₁ values, for scalar-summary tests.
    fn synthetic_curve(lambdas: &[f64]) -> EffectivenessCurve {
        let n = lambdas.len() + 1;
        let records = lambdas
            .iter()
            .enumerate()
            .map(|(i, &lambda)| CurveRecord {
                c: i + 1,
                p: (i + 1) as f64 / n as f64,
                pinned: (0..=i).collect(),
                evaluation: SpectralResult::new(lambda, Backend::Annealed, 0, 0.0),
                selection: SpectralResult::new(lambda, Backend::Annealed, 0, 0.0),
                d_hm: if i == 0 { None } else { Some(1) },
                k_star: None,
            })
            .collect();
        EffectivenessCurve {
            strategy: Strategy::A2,
            backend: Backend::Annealed,
            n,
            records,
            seeds: Vec::new(),
        }
    }

    #[test]
    fn hamming_known_values() {
        assert_eq!(hamming(&[3, 8], &[3, 12, 30]), 3);
        assert_eq!(hamming(&[1, 2, 3], &[1, 2, 3]), 0);
        assert_eq!(hamming(&[1], &[2]), 2);
        assert_eq!(hamming(&[], &[]), 0);
        assert_eq!(hamming(&[], &[5, 7]), 2);
    }

    #[test]
    fn hamming_is_a_metric() {
        let mut rng = crate::rng::seeded(17);
        let random_set = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<usize> {
            (0..10).filter(|_| rng.gen_bool(0.4)).collect()
        };
        for _ in 0..200 {
            let a = random_set(&mut rng);
            let b = random_set(&mut rng);
            let c = random_set(&mut rng);
            assert_eq!(hamming(&a, &b), hamming(&b, &a));
            assert_eq!(hamming(&a, &a), 0);
            assert!(hamming(&a, &c) <= hamming(&a, &b) + hamming(&b, &c));
            if a != b {
                assert!(hamming(&a, &b) > 0);
            }
        }
    }

    #[test]
    fn efficiency_is_mean_of_inverses() {
        // λ = [0.5, 1, 2] → 1/λ = [2, 1, 0.5] → ω = 7/6.
        let curve = synthetic_curve(&[0.5, 1.0, 2.0]);
        assert_relative_eq!(pinning_efficiency(&curve).unwrap(), 7.0 / 6.0, max_relative = 1e-14);
        let constant = synthetic_curve(&[1.0, 1.0, 1.0]);
        assert_relative_eq!(pinning_efficiency(&constant).unwrap(), 1.0, max_relative = 1e-14);
        let single = synthetic_curve(&[4.0]);
        assert_relative_eq!(pinning_efficiency(&single).unwrap(), 0.25, max_relative = 1e-14);
    }

    #[test]
    fn efficiency_bounded_by_curve_extremes() {
        let mut rng = crate::rng::seeded(23);
        for _ in 0..50 {
            let lambdas: Vec<f64> = (0..rng.gen_range(1..8)).map(|_| rng.gen_range(0.1..5.0)).collect();
            let curve = synthetic_curve(&lambdas);
            let omega = pinning_efficiency(&curve).unwrap();
            let inverses = curve.inverses();
            let lo = inverses.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = inverses.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            assert!(lo - 1e-12 <= omega && omega <= hi + 1e-12);
        }
    }

    #[test]
    fn endpoint_takes_last_record() {
        let curve = synthetic_curve(&[0.5, 1.0, 2.0]);
        assert_relative_eq!(endpoint_effectiveness(&curve).unwrap(), 0.5, max_relative = 1e-14);
        let constant = synthetic_curve(&[1.0]);
        assert_relative_eq!(endpoint_effectiveness(&constant).unwrap(), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn empty_curve_is_an_error() {
        let curve = synthetic_curve(&[]);
        assert!(matches!(pinning_efficiency(&curve), Err(Error::EmptyCurve)));
        assert!(matches!(endpoint_effectiveness(&curve), Err(Error::EmptyCurve)));
        assert!(summarize(&curve).is_err());
    }

    #[test]
    fn improvement_ratio_examples() {
        let ratios = improvement_ratios(
            CurveSummary { omega: 0.25, delta: 0.25 },
            CurveSummary { omega: 1.0, delta: 1.0 },
        )
        .unwrap();
        assert_relative_eq!(ratios.d_omega, 75.0, max_relative = 1e-12);
        assert_relative_eq!(ratios.d_delta, 75.0, max_relative = 1e-12);

        let equal = improvement_ratios(
            CurveSummary { omega: 0.8, delta: 0.9 },
            CurveSummary { omega: 0.8, delta: 0.9 },
        )
        .unwrap();
        assert_relative_eq!(equal.d_omega, 0.0, epsilon = 1e-12);
        assert_relative_eq!(equal.d_delta, 0.0, epsilon = 1e-12);

        // ω_sub = 1.0033, ω_ours = 0.2768 → 72.41% after rounding.
        let table = improvement_ratios(
            CurveSummary { omega: 0.2768, delta: 1.0 },
            CurveSummary { omega: 1.0033, delta: 1.0 },
        )
        .unwrap();
        assert!((table.d_omega - 72.41).abs() < 0.005, "got {}", table.d_omega);
    }

    #[test]
    fn improvement_rejects_nonpositive_baseline() {
        let ours = CurveSummary { omega: 0.5, delta: 0.5 };
        for bad in [0.0, -1.0] {
            let err = improvement_ratios(ours, CurveSummary { omega: bad, delta: 1.0 });
            assert!(matches!(err, Err(Error::NonPositiveBaseline { .. })));
        }
    }

    #[test]
    fn best_suboptimal_takes_per_metric_minima() {
        let best = best_suboptimal([
            CurveSummary { omega: 1.0, delta: 3.0 },
            CurveSummary { omega: 2.0, delta: 1.5 },
        ])
        .unwrap();
        assert_eq!(best.omega, 1.0);
        assert_eq!(best.delta, 1.5);
        assert!(best_suboptimal([]).is_none());
    }

    #[test]
    fn curve_reuses_matching_backend_and_recomputes_other() {
        // Path 0–1–2–3: degrees [1,2,2,1].
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = DegreeHistogram::from_graph(&g).unwrap();
        let output = select_a2_curve(&h, 2).unwrap();

        let annealed = evaluate_curve(&output, &g, EvalBackend::Annealed).unwrap();
        for (curve_rec, out_rec) in annealed.records.iter().zip(&output.records) {
            // Same backend → the selection result is carried over verbatim.
            assert_eq!(curve_rec.evaluation, out_rec.selection);
            assert_eq!(curve_rec.evaluation.backend, Backend::Annealed);
        }

        let quenched = evaluate_curve(&output, &g, EvalBackend::Quenched).unwrap();
        for curve_rec in &quenched.records {
            assert_eq!(curve_rec.evaluation.backend, Backend::Quenched);
            assert_eq!(curve_rec.selection.backend, Backend::Annealed);
            // The quenched value is a genuinely different number here.
            assert!((curve_rec.evaluation.lambda1 - curve_rec.selection.lambda1).abs() > 1e-6);
        }
    }

    #[test]
    fn curve_records_fraction_and_churn() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = DegreeHistogram::from_graph(&g).unwrap();
        let output = select_a2_curve(&h, 3).unwrap();
        let curve = evaluate_curve(&output, &g, EvalBackend::Annealed).unwrap();
        assert_eq!(curve.n, 4);
        assert_eq!(curve.records.len(), 3);
        assert_eq!(curve.records[0].d_hm, None);
        for (i, rec) in curve.records.iter().enumerate() {
            assert_eq!(rec.c, i + 1);
            assert_relative_eq!(rec.p, (i + 1) as f64 / 4.0, max_relative = 1e-15);
            assert_eq!(rec.pinned.len(), rec.c);
        }
        for w in curve.records.windows(2) {
            let expected = hamming(&w[0].pinned, &w[1].pinned);
            assert_eq!(w[1].d_hm, Some(expected));
        }
        let tagged = curve.with_seeds([7, 8]);
        assert_eq!(tagged.seeds, vec![7, 8]);
    }

    #[test]
    fn empty_output_gives_empty_curve() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let output = StrategyOutput {
            strategy: Strategy::Bfg,
            records: Vec::new(),
        };
        let curve = evaluate_curve(&output, &g, EvalBackend::Quenched).unwrap();
        assert!(curve.records.is_empty());
        assert_eq!(curve.strategy, Strategy::Bfg);
    }
}
