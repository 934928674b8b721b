//! Exhaustive pinning-set search: the ground truth the fast strategies are
//! measured against.
//!
//! Subsets are enumerated in lexicographic order (by the combinatorial
//! number system, so chunks can start anywhere for parallel fan-out) and
//! reduced deterministically: strictly larger λ₁ wins, ties keep the
//! earlier — lexicographically smaller — subset. A cheap admissibility
//! bound (λ₁ never reaches the minimum free degree) prunes solves that
//! cannot beat the incumbent; the shared incumbent is only ever a valid
//! lower bound, so pruning cannot change the winner.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::graph::{Graph, PinningPartition};
use crate::par;
use crate::spectral::{
    annealed_lambda1, quenched_lambda1, AnnealedGroundedSystem, EvalBackend, SpectralResult, DEFAULT_ANNEALED_TOL,
    DEFAULT_QUENCHED_TOL,
};
use crate::{Error, Result};

/// Refuse to enumerate more than this many subsets.
pub const ENUMERATION_CAP: u64 = 10_000_000;

/// Subsets per parallel work unit. Fixed so the chunking — and therefore
/// every floating-point reduction — is identical at any thread count.
const CHUNK: u64 = 8192;

/// `C(n, k)` saturating at `u128::MAX`.
fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// The `rank`-th (0-based) size-`c` subset of `0..n` in lexicographic order.
fn unrank(n: usize, c: usize, mut rank: u128) -> Vec<usize> {
    let mut comb = Vec::with_capacity(c);
    let mut v = 0;
    for pos in 0..c {
        loop {
            let with_v = binomial(n - 1 - v, c - 1 - pos);
            if rank < with_v {
                break;
            }
            rank -= with_v;
            v += 1;
        }
        comb.push(v);
        v += 1;
    }
    comb
}

/// Advance to the lexicographic successor; false when exhausted.
fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let c = comb.len();
    let mut i = c;
    while i > 0 {
        i -= 1;
        if comb[i] < n - c + i {
            comb[i] += 1;
            for j in i + 1..c {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Monotone shared lower bound on the best λ₁ seen anywhere (bit-packed
/// nonnegative f64). Stale reads only weaken pruning, never correctness.
struct SharedBound(AtomicU64);

impl SharedBound {
    fn new() -> Self {
        SharedBound(AtomicU64::new(0f64.to_bits()))
    }

    fn get(&self) -> f64 {
        f64::from_bits(self.0.load(Ordering::Relaxed))
    }

    fn raise(&self, v: f64) {
        let _ = self
            .0
            .fetch_update(Ordering::Relaxed, Ordering::Relaxed, |cur| {
                (v > f64::from_bits(cur)).then(|| v.to_bits())
            });
    }
}

/// Generic enumeration engine. `eval` returns the candidate's λ₁, or `None`
/// when it pruned itself against the supplied bound.
fn enumerate_best<F>(n: usize, c: usize, eval: F) -> Result<Vec<usize>>
where
    F: Fn(&[usize], f64) -> Result<Option<f64>> + Sync,
{
    if c < 1 || c >= n {
        return Err(Error::BadBudget { budget: c, nodes: n });
    }
    let total_wide = binomial(n, c);
    if total_wide > ENUMERATION_CAP as u128 {
        return Err(Error::EnumerationCapExceeded {
            combinations: total_wide,
            cap: ENUMERATION_CAP,
        });
    }
    let total = total_wide as u64;
    let chunks = total.div_ceil(CHUNK) as usize;
    let bound = SharedBound::new();

    let chunk_results: Vec<Result<Option<(f64, Vec<usize>)>>> = par::map_range(chunks, |ci| {
        let start = ci as u64 * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut comb = unrank(n, c, start as u128);
        let mut local: Option<(f64, Vec<usize>)> = None;
        for idx in start..end {
            if idx > start && !next_combination(&mut comb, n) {
                unreachable!("ran out of combinations before the counted total");
            }
            let cutoff = bound.get().max(local.as_ref().map_or(0.0, |(l, _)| *l));
            if let Some(lambda) = eval(&comb, cutoff)? {
                if local.as_ref().map_or(true, |(l, _)| lambda > *l) {
                    bound.raise(lambda);
                    local = Some((lambda, comb.clone()));
                }
            }
        }
        Ok(local)
    });

    let mut best: Option<(f64, Vec<usize>)> = None;
    for chunk in chunk_results {
        if let Some((lambda, comb)) = chunk? {
            if best.as_ref().map_or(true, |(l, _)| lambda > *l) {
                best = Some((lambda, comb));
            }
        }
    }
    Ok(best.expect("at least one subset evaluates").1)
}

/// Exhaustive annealed optimum over a bare degree vector.
///
/// The annealed λ₁ depends only on which degrees are pinned, yet the
/// reported winner is still the lexicographically smallest optimal node
/// set, matching [`select_exhaustive`] exactly.
pub fn exhaustive_annealed_degrees(degrees: &[usize], c: usize) -> Result<(PinningPartition, SpectralResult)> {
    let n = degrees.len();
    let winner = enumerate_best(n, c, |subset, cutoff| {
        let mut free = Vec::with_capacity(n - c);
        let mut pinned_sum = 0u64;
        let mut it = subset.iter().peekable();
        let mut free_min = usize::MAX;
        for (node, &d) in degrees.iter().enumerate() {
            if it.peek() == Some(&&node) {
                it.next();
                pinned_sum += d as u64;
            } else {
                free.push(d);
                free_min = free_min.min(d);
            }
        }
        if (free_min as f64) < cutoff {
            return Ok(None);
        }
        let sys = AnnealedGroundedSystem::new(&free, pinned_sum)?;
        Ok(Some(annealed_lambda1(&sys, DEFAULT_ANNEALED_TOL)?.lambda1))
    })?;
    let p = PinningPartition::new(winner, n);
    let sys = AnnealedGroundedSystem::from_partition(degrees, &p)?;
    let result = annealed_lambda1(&sys, DEFAULT_ANNEALED_TOL)?;
    Ok((p, result))
}

/// Globally optimal size-`c` pinning set under the chosen backend.
pub fn select_exhaustive(g: &Graph, c: usize, backend: EvalBackend) -> Result<(PinningPartition, SpectralResult)> {
    match backend {
        EvalBackend::Annealed => exhaustive_annealed_degrees(&g.degree_vector(), c),
        EvalBackend::Quenched => {
            let n = g.node_count();
            let degrees = g.degree_vector();
            let winner = enumerate_best(n, c, |subset, cutoff| {
                let mut free_min = usize::MAX;
                let mut it = subset.iter().peekable();
                for node in 0..n {
                    if it.peek() == Some(&&node) {
                        it.next();
                    } else {
                        free_min = free_min.min(degrees[node]);
                    }
                }
                if (free_min as f64) < cutoff {
                    return Ok(None);
                }
                let p = PinningPartition::new(subset.iter().copied(), n);
                Ok(Some(quenched_lambda1(g, &p, DEFAULT_QUENCHED_TOL)?.lambda1))
            })?;
            let p = PinningPartition::new(winner, n);
            let result = quenched_lambda1(g, &p, DEFAULT_QUENCHED_TOL)?;
            Ok((p, result))
        }
    }
}
