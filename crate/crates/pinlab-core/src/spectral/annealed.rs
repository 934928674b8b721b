//! Annealed (degree mean-field) grounded spectrum.
//!
//! Under the annealed approximation the adjacency matrix is replaced by its
//! configuration-model expectation `d_i d_j / K`, so the grounded Laplacian
//! becomes `L_F = D_F - (1/K) d_F d_F^T` — diagonal minus rank one. Its
//! smallest eigenvalue is the unique root in `(0, min d_F)` of the scalar
//! characteristic function
//!
//! ```text
//! g(λ) = Σ_{n∈F} λ·d_n/(d_n − λ) − Σ_{n∈P} d_n
//! ```
//!
//! which is strictly increasing on that interval (`g'(λ) = Σ d²/(d−λ)² > 0`,
//! `g(0) = −S_P < 0`, `g → +∞` at `min d_F`). Degrees here are always the
//! ORIGINAL full-graph degrees: grounding deletes rows and columns, it does
//! not touch the remaining nodes' degrees.

use crate::graph::PinningPartition;
use crate::spectral::dense::DenseMatrix;
use crate::spectral::{Backend, SpectralResult};
use crate::{Error, Result};

/// Relative offset defining the initial root bracket `[ε·dmin, (1−ε)·dmin]`.
const BRACKET_EPS: f64 = 1e-9;

/// Iteration cap for the guarded Newton/bisection loop; generous, the loop
/// gains at least one bisection bit per step.
const MAX_ITERS: usize = 200;

/// The scalar data determining the annealed grounded spectrum: free degrees
/// (compressed into `(degree, multiplicity)` levels), the pinned degree sum
/// `S_P`, and the total degree `K` (metadata; the root does not depend on it).
#[derive(Debug, Clone, PartialEq)]
pub struct AnnealedGroundedSystem {
    /// Ascending `(degree, count)` levels of the free set.
    free_levels: Vec<(usize, usize)>,
    pinned_degree_sum: u64,
    total_degree: u64,
}

impl AnnealedGroundedSystem {
    /// Build from an explicit free-degree vector and pinned degree sum.
    pub fn new(free_degrees: &[usize], pinned_degree_sum: u64) -> Result<Self> {
        if free_degrees.is_empty() {
            return Err(Error::EmptyFreeSet);
        }
        if let Some(node) = free_degrees.iter().position(|&d| d == 0) {
            return Err(Error::ZeroDegree { node });
        }
        if pinned_degree_sum == 0 {
            return Err(Error::EmptyPinnedSet);
        }
        let mut sorted = free_degrees.to_vec();
        sorted.sort_unstable();
        let mut free_levels: Vec<(usize, usize)> = Vec::new();
        for d in sorted {
            match free_levels.last_mut() {
                Some((deg, count)) if *deg == d => *count += 1,
                _ => free_levels.push((d, 1)),
            }
        }
        let free_sum: u64 = free_levels.iter().map(|&(d, c)| (d * c) as u64).sum();
        Ok(AnnealedGroundedSystem {
            free_levels,
            pinned_degree_sum,
            total_degree: pinned_degree_sum + free_sum,
        })
    }

    /// Build from pre-compressed ascending `(degree, count)` levels.
    pub fn from_levels(levels: &[(usize, usize)], pinned_degree_sum: u64) -> Result<Self> {
        let free_levels: Vec<(usize, usize)> = levels.iter().copied().filter(|&(_, c)| c > 0).collect();
        if free_levels.is_empty() {
            return Err(Error::EmptyFreeSet);
        }
        if free_levels.iter().any(|&(d, _)| d == 0) {
            return Err(Error::ZeroDegree { node: 0 });
        }
        if pinned_degree_sum == 0 {
            return Err(Error::EmptyPinnedSet);
        }
        debug_assert!(free_levels.windows(2).all(|w| w[0].0 < w[1].0), "levels must be ascending and distinct");
        let free_sum: u64 = free_levels.iter().map(|&(d, c)| (d * c) as u64).sum();
        Ok(AnnealedGroundedSystem {
            free_levels,
            pinned_degree_sum,
            total_degree: pinned_degree_sum + free_sum,
        })
    }

    /// Build from a full degree vector and a pinning partition over it.
    pub fn from_partition(degrees: &[usize], p: &PinningPartition) -> Result<Self> {
        assert_eq!(degrees.len(), p.node_count(), "partition and degree vector disagree on N");
        if p.pinned().is_empty() {
            return Err(Error::EmptyPinnedSet);
        }
        if p.budget() >= degrees.len() {
            return Err(Error::EmptyFreeSet);
        }
        let pinned_degree_sum: u64 = p.pinned().iter().map(|&n| degrees[n] as u64).sum();
        let free_degrees: Vec<usize> = p.free_nodes().iter().map(|&n| degrees[n]).collect();
        Self::new(&free_degrees, pinned_degree_sum)
    }

    /// Smallest free degree; the root lives strictly below it.
    pub fn min_free_degree(&self) -> usize {
        self.free_levels[0].0
    }

    pub fn free_levels(&self) -> &[(usize, usize)] {
        &self.free_levels
    }

    pub fn free_count(&self) -> usize {
        self.free_levels.iter().map(|&(_, c)| c).sum()
    }

    /// `S_P = Σ_{n∈P} d_n`.
    pub fn pinned_degree_sum(&self) -> u64 {
        self.pinned_degree_sum
    }

    /// `K = Σ_n d_n` over pinned and free nodes alike.
    pub fn total_degree(&self) -> u64 {
        self.total_degree
    }
}

/// The characteristic function `g(λ) = Σ_{n∈F} λ·d_n/(d_n−λ) − S_P`.
///
/// Domain `0 ≤ λ < min d_F`; strictly increasing there, with `g(0) = −S_P`.
pub fn char_residual(sys: &AnnealedGroundedSystem, lambda: f64) -> Result<f64> {
    let dmin = sys.min_free_degree() as f64;
    if !(0.0..dmin).contains(&lambda) {
        return Err(Error::OutOfDomain {
            lambda,
            min_free_degree: dmin,
        });
    }
    let mut sum = 0.0;
    for &(d, count) in sys.free_levels.iter().rev() {
        let d = d as f64;
        sum += count as f64 * lambda * d / (d - lambda);
    }
    Ok(sum - sys.pinned_degree_sum as f64)
}

/// `g'(λ) = Σ_{n∈F} d_n²/(d_n−λ)²`, strictly positive on the domain.
pub fn char_derivative(sys: &AnnealedGroundedSystem, lambda: f64) -> f64 {
    let mut sum = 0.0;
    for &(d, count) in sys.free_levels.iter().rev() {
        let d = d as f64;
        let r = d / (d - lambda);
        sum += count as f64 * r * r;
    }
    sum
}

/// Root of the characteristic function: the annealed λ₁.
///
/// Establishes a sign-changing bracket inside `(0, min d_F)` and then runs
/// Newton steps guarded to stay in-bracket, falling back to bisection
/// whenever a step escapes or stalls. Terminates when the step size drops to
/// `tol·min d_F` (relative tolerance, so heavy-tailed instances converge to
/// uniform relative accuracy).
pub fn annealed_lambda1(sys: &AnnealedGroundedSystem, tol: f64) -> Result<SpectralResult> {
    assert!(tol > 0.0, "tolerance must be positive");
    let dmin = sys.min_free_degree() as f64;
    let mut lo = BRACKET_EPS * dmin;
    let mut hi = dmin * (1.0 - BRACKET_EPS);
    // g(lo) < 0 is guaranteed for any nontrivial S_P; g(hi) > 0 can fail only
    // for astronomical S_P, in which case we push hi closer to the pole.
    let mut g_lo = char_residual(sys, lo)?;
    if g_lo > 0.0 {
        lo = 0.0;
        g_lo = -(sys.pinned_degree_sum as f64);
    }
    let mut g_hi = char_residual(sys, hi)?;
    let mut widen = 0;
    while g_hi <= 0.0 {
        widen += 1;
        if widen > 8 {
            return Err(Error::EigenNoConverge(format!(
                "cannot bracket the characteristic root below min free degree {dmin}"
            )));
        }
        hi = dmin - (dmin - hi) / 1e3;
        g_hi = char_residual(sys, hi)?;
    }
    debug_assert!(g_lo < 0.0 && g_hi > 0.0);

    let target = tol * dmin;
    let mut x = 0.5 * (lo + hi);
    let mut iterations = 0;
    loop {
        iterations += 1;
        if iterations > MAX_ITERS {
            return Err(Error::EigenNoConverge(format!(
                "characteristic root finder stalled at λ={x} after {MAX_ITERS} iterations"
            )));
        }
        let g = char_residual(sys, x)?;
        if g == 0.0 {
            break;
        }
        if g < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - g / char_derivative(sys, x);
        let next = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - x).abs();
        x = next;
        if step <= target || (hi - lo) <= target {
            break;
        }
    }

    if !(x > 0.0 && x < dmin) {
        return Err(Error::EigenNoConverge(format!(
            "root {x} escaped the admissible interval (0, {dmin})"
        )));
    }
    let residual = char_residual(sys, x)?.abs();
    Ok(SpectralResult::new(x, Backend::Annealed, iterations, residual))
}

/// The explicit annealed grounded matrix `D_F − (1/K) d_F d_F^T` with rows
/// and columns in ascending free-node order, entries from the ORIGINAL
/// full-graph degrees. Intended for oracle cross-validation, not production
/// solves (the scalar root finder is exact and O(Q) per evaluation).
pub fn annealed_grounded_matrix(degrees: &[usize], p: &PinningPartition) -> Result<DenseMatrix> {
    assert_eq!(degrees.len(), p.node_count(), "partition and degree vector disagree on N");
    if p.budget() >= degrees.len() {
        return Err(Error::EmptyFreeSet);
    }
    let free = p.free_nodes();
    let k_total: u64 = degrees.iter().map(|&d| d as u64).sum();
    let k = k_total as f64;
    let mut m = DenseMatrix::zeros(free.len());
    for (i, &ni) in free.iter().enumerate() {
        let di = degrees[ni] as f64;
        for (j, &nj) in free.iter().enumerate() {
            let dj = degrees[nj] as f64;
            let mut v = -di * dj / k;
            if i == j {
                v += di;
            }
            m.set(i, j, v);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::dense::dense_smallest_eigen;
    use approx::assert_relative_eq;
    use rand::Rng;

    fn sys(free: &[usize], s_p: u64) -> AnnealedGroundedSystem {
        AnnealedGroundedSystem::new(free, s_p).unwrap()
    }

    #[test]
    fn residual_at_zero_is_minus_pinned_sum() {
        let s = sys(&[1, 2, 7], 9);
        assert_eq!(char_residual(&s, 0.0).unwrap(), -9.0);
    }

    #[test]
    fn residual_regular_closed_form_root() {
        // Regular network d=2, N=4, c=1: free degrees [2,2,2], S_P = 2,
        // root at c·d/N = 0.5.
        let s = sys(&[2, 2, 2], 2);
        assert_relative_eq!(char_residual(&s, 0.5).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn residual_two_free_node_root() {
        // d_F = [1,2], S_P = 3: 6λ²−13λ+6 = 0 has root 2/3 in (0,1).
        let s = sys(&[1, 2], 3);
        assert_relative_eq!(char_residual(&s, 2.0 / 3.0).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn residual_domain_error() {
        let s = sys(&[1, 2], 3);
        assert!(matches!(char_residual(&s, 1.0), Err(Error::OutOfDomain { .. })));
        assert!(matches!(char_residual(&s, -0.1), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn residual_is_strictly_increasing() {
        let s = sys(&[1, 3, 3, 8], 11);
        let mut prev = char_residual(&s, 0.0).unwrap();
        for i in 1..100 {
            let x = 0.999 * (i as f64) / 100.0;
            let g = char_residual(&s, x).unwrap();
            assert!(g > prev, "g not increasing at λ={x}");
            prev = g;
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let s = sys(&[2, 3, 5], 4);
        let h = 1e-7;
        for &x in &[0.1, 0.9, 1.5, 1.9] {
            let fd = (char_residual(&s, x + h).unwrap() - char_residual(&s, x - h).unwrap()) / (2.0 * h);
            assert_relative_eq!(char_derivative(&s, x), fd, max_relative = 1e-5);
        }
    }

    #[test]
    fn lambda1_pin_highest_of_three() {
        // Degrees {1,2,3}, P = {degree-3 node}.
        let s = sys(&[1, 2], 3);
        let r = annealed_lambda1(&s, 1e-12).unwrap();
        assert_relative_eq!(r.lambda1, 2.0 / 3.0, epsilon = 1e-10);
        assert_relative_eq!(r.inverse, 1.5, epsilon = 1e-9);
    }

    #[test]
    fn lambda1_pin_two_lowest_of_three() {
        // P = {deg-1, deg-2}: 1×1 grounded matrix 3 − 9/6 = 3/2.
        let s = sys(&[3], 3);
        let r = annealed_lambda1(&s, 1e-12).unwrap();
        assert_relative_eq!(r.lambda1, 1.5, epsilon = 1e-10);
    }

    #[test]
    fn lambda1_pin_lowest_of_three() {
        // P = {deg-1}: 6λ²−17λ+6 = 0, root (17−√145)/12.
        let s = sys(&[2, 3], 1);
        let r = annealed_lambda1(&s, 1e-12).unwrap();
        assert_relative_eq!(r.lambda1, (17.0 - 145f64.sqrt()) / 12.0, epsilon = 1e-10);
    }

    #[test]
    fn lambda1_pin_middle_of_three() {
        // P = {deg-2}: 3λ²−7λ+3 = 0, root (7−√13)/6.
        let s = sys(&[1, 3], 2);
        let r = annealed_lambda1(&s, 1e-12).unwrap();
        assert_relative_eq!(r.lambda1, (7.0 - 13f64.sqrt()) / 6.0, epsilon = 1e-10);
    }

    #[test]
    fn lambda1_regular_closed_form_sweep() {
        for n in [4usize, 10, 33] {
            for c in 1..n.min(8) {
                for d in [2usize, 3, 5] {
                    if d >= n {
                        continue;
                    }
                    let free = vec![d; n - c];
                    let s = sys(&free, (c * d) as u64);
                    let r = annealed_lambda1(&s, 1e-13).unwrap();
                    let expected = c as f64 * d as f64 / n as f64;
                    assert_relative_eq!(r.lambda1, expected, epsilon = 1e-11, max_relative = 1e-11);
                }
            }
        }
    }

    #[test]
    fn lambda1_strictly_inside_interval() {
        let s = sys(&[1, 1, 1, 9, 9], 1_000_000);
        let r = annealed_lambda1(&s, 1e-12).unwrap();
        assert!(r.lambda1 > 0.0 && r.lambda1 < 1.0, "λ={}", r.lambda1);
    }

    #[test]
    fn lambda1_agrees_with_dense_oracle_on_random_systems() {
        let mut rng = crate::rng::seeded(7);
        for _ in 0..50 {
            let n = rng.gen_range(2..=12);
            let c = rng.gen_range(1..n);
            let degrees: Vec<usize> = (0..n).map(|_| rng.gen_range(1..10)).collect();
            let pinned: Vec<usize> = (0..c).collect();
            let p = PinningPartition::new(pinned, n);
            let s = AnnealedGroundedSystem::from_partition(&degrees, &p).unwrap();
            let root = annealed_lambda1(&s, 1e-13).unwrap().lambda1;
            let m = annealed_grounded_matrix(&degrees, &p).unwrap();
            let oracle = dense_smallest_eigen(&m, 1e-10).unwrap();
            assert!((root - oracle).abs() <= 1e-8, "root {root} vs oracle {oracle} for {degrees:?} c={c}");
        }
    }

    #[test]
    fn grounded_matrix_frozen_example() {
        // Degrees {1,2,3}, pin the degree-3 node (id 2), K = 6.
        let p = PinningPartition::new([2], 3);
        let m = annealed_grounded_matrix(&[1, 2, 3], &p).unwrap();
        assert_relative_eq!(m.get(0, 0), 5.0 / 6.0, epsilon = 1e-15);
        assert_relative_eq!(m.get(0, 1), -1.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(m.get(1, 0), -1.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(m.get(1, 1), 4.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn grounded_matrix_single_free_node() {
        let p = PinningPartition::new([0, 1], 3);
        let m = annealed_grounded_matrix(&[2, 2, 4], &p).unwrap();
        assert_eq!(m.size(), 1);
        assert_relative_eq!(m.get(0, 0), 4.0 - 16.0 / 8.0, epsilon = 1e-15);
    }

    #[test]
    fn grounded_matrix_is_degree_homogeneous() {
        let p = PinningPartition::new([0], 4);
        let m1 = annealed_grounded_matrix(&[3, 1, 2, 2], &p).unwrap();
        let m2 = annealed_grounded_matrix(&[6, 2, 4, 4], &p).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_relative_eq!(m2.get(i, j), 2.0 * m1.get(i, j), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn system_constructors_validate() {
        assert!(matches!(AnnealedGroundedSystem::new(&[], 1), Err(Error::EmptyFreeSet)));
        assert!(matches!(AnnealedGroundedSystem::new(&[1, 2], 0), Err(Error::EmptyPinnedSet)));
        assert!(matches!(AnnealedGroundedSystem::new(&[1, 0], 1), Err(Error::ZeroDegree { .. })));
        let s = AnnealedGroundedSystem::new(&[3, 1, 1, 2], 5).unwrap();
        assert_eq!(s.free_levels(), &[(1, 2), (2, 1), (3, 1)]);
        assert_eq!(s.min_free_degree(), 1);
        assert_eq!(s.total_degree(), 12);
        assert_eq!(s.free_count(), 4);
    }
}
