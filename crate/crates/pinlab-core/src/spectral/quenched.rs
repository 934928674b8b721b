//! Quenched (real-graph) grounded spectrum.
//!
//! The grounded Laplacian `L_F` is the principal submatrix of the true
//! combinatorial Laplacian on the free set: full original degrees on the
//! diagonal, `−1` per edge inside `F`. With the graph connected and `P`
//! nonempty it is symmetric positive definite, so the smallest eigenvalue is
//! found by inverse power iteration with a conjugate-gradient inner solver.
//! Small systems (`|F| ≤ 512`) go straight to the dense oracle.

use rand::Rng;

use crate::graph::{Graph, PinningPartition};
use crate::rng::{seeded_stream, StreamId};
use crate::spectral::dense::{dense_smallest_eigen_full, DenseMatrix};
use crate::spectral::{Backend, SpectralResult};
use crate::{Error, Result};

/// At or below this free-set size the dense oracle replaces CG.
pub const DENSE_FALLBACK: usize = 512;

/// Seed of the deterministic start vector (internal constant: the quenched
/// solve takes no seed argument, yet must be reproducible bit-for-bit).
const START_SEED: u64 = 0x9E37_79B9_7F4A_7C15;

/// Cap on outer inverse-power iterations.
const OUTER_CAP: usize = 5000;

/// Relative residual target for each CG solve.
const CG_RTOL: f64 = 1e-12;

/// The grounded Laplacian as a sparse symmetric operator in free-index
/// space.
#[derive(Debug, Clone)]
pub struct GroundedOperator {
    /// Full original degree of each free node (diagonal of `L_F`).
    degrees: Vec<f64>,
    /// Free-to-free adjacency, indices into the free ordering.
    adj: Vec<Vec<usize>>,
    /// Free node ids, ascending (the row/column order).
    free: Vec<usize>,
}

impl GroundedOperator {
    pub fn new(g: &Graph, p: &PinningPartition) -> Result<Self> {
        assert_eq!(g.node_count(), p.node_count(), "partition and graph disagree on N");
        if p.pinned().is_empty() {
            return Err(Error::EmptyPinnedSet);
        }
        if p.budget() >= g.node_count() {
            return Err(Error::EmptyFreeSet);
        }
        let free = p.free_nodes();
        let mut index = vec![usize::MAX; g.node_count()];
        for (pos, &node) in free.iter().enumerate() {
            index[node] = pos;
        }
        let degrees = free.iter().map(|&n| g.degree(n) as f64).collect();
        let adj = free
            .iter()
            .map(|&n| {
                g.neighbors(n)
                    .iter()
                    .filter_map(|&m| (index[m] != usize::MAX).then(|| index[m]))
                    .collect()
            })
            .collect();
        Ok(GroundedOperator { degrees, adj, free })
    }

    pub fn size(&self) -> usize {
        self.free.len()
    }

    pub fn free_nodes(&self) -> &[usize] {
        &self.free
    }

    /// Smallest diagonal entry, the Lemma-1-style upper bound on λ₁.
    pub fn min_degree(&self) -> f64 {
        self.degrees.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `y = L_F x`.
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for i in 0..self.degrees.len() {
            let mut acc = self.degrees[i] * x[i];
            for &j in &self.adj[i] {
                acc -= x[j];
            }
            y[i] = acc;
        }
    }

    /// Materialize as a dense matrix (for the oracle path and tests).
    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.size();
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, self.degrees[i]);
            for &j in &self.adj[i] {
                m.set(i, j, -1.0);
            }
        }
        m
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Conjugate gradients for `L_F x = b`; `x` carries the initial guess in and
/// the solution out. Returns the iteration count.
fn conjugate_gradient(op: &GroundedOperator, b: &[f64], x: &mut [f64], rtol: f64, max_iter: usize) -> Result<usize> {
    let n = b.len();
    let mut r = vec![0.0; n];
    let mut ap = vec![0.0; n];
    op.matvec(x, &mut r);
    for i in 0..n {
        r[i] = b[i] - r[i];
    }
    let target = rtol * norm(b).max(f64::MIN_POSITIVE);
    let mut rr = dot(&r, &r);
    if rr.sqrt() <= target {
        return Ok(0);
    }
    let mut p = r.clone();
    for iter in 1..=max_iter {
        op.matvec(&p, &mut ap);
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            // L_F must be positive definite; a nonpositive curvature means
            // the grounding assumption was violated.
            return Err(Error::CgNoConverge {
                residual: rr.sqrt(),
                iterations: iter,
            });
        }
        let alpha = rr / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rr_next = dot(&r, &r);
        if rr_next.sqrt() <= target {
            return Ok(iter);
        }
        let beta = rr_next / rr;
        rr = rr_next;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
    }
    Err(Error::CgNoConverge {
        residual: rr.sqrt(),
        iterations: max_iter,
    })
}

/// Dense materialization of the grounded Laplacian (diagnostics/tests).
pub fn quenched_grounded_dense(g: &Graph, p: &PinningPartition) -> Result<DenseMatrix> {
    Ok(GroundedOperator::new(g, p)?.to_dense())
}

/// Smallest eigenvalue of the quenched grounded Laplacian.
///
/// Inverse power iteration: each step solves `L_F y = x` by CG and updates
/// the Rayleigh quotient; converged when the quotient moves by at most
/// `tol`. The start vector is drawn once from a fixed seeded stream, so
/// results are bit-reproducible. `|F| ≤ 512` uses the dense oracle instead.
pub fn quenched_lambda1(g: &Graph, p: &PinningPartition, tol: f64) -> Result<SpectralResult> {
    assert!(tol > 0.0, "tolerance must be positive");
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let op = GroundedOperator::new(g, p)?;
    let n = op.size();
    let dmin = op.min_degree();

    if n <= DENSE_FALLBACK {
        let (lambda, iterations, residual) = dense_smallest_eigen_full(&op.to_dense(), tol.max(1e-12))?;
        check_bounds(lambda, dmin)?;
        return Ok(SpectralResult::new(lambda, Backend::Quenched, iterations, residual));
    }

    let mut rng = seeded_stream(START_SEED, StreamId::StartVector);
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..1.5)).collect();
    let inv = 1.0 / norm(&x);
    x.iter_mut().for_each(|v| *v *= inv);

    let mut y = x.clone();
    let mut z = vec![0.0; n];
    let cg_cap = 6 * n + 200;
    let mut lambda_prev = f64::INFINITY;
    let mut iterations = 0usize;
    for _ in 0..OUTER_CAP {
        let inner = conjugate_gradient(&op, &x, &mut y, CG_RTOL, cg_cap)?;
        iterations += inner.max(1);
        let inv = 1.0 / norm(&y);
        y.iter_mut().for_each(|v| *v *= inv);
        op.matvec(&y, &mut z);
        let lambda = dot(&y, &z);
        x.copy_from_slice(&y);
        if (lambda - lambda_prev).abs() <= tol {
            check_bounds(lambda, dmin)?;
            let residual = z
                .iter()
                .zip(&y)
                .map(|(zi, yi)| {
                    let r = zi - lambda * yi;
                    r * r
                })
                .sum::<f64>()
                .sqrt();
            return Ok(SpectralResult::new(lambda, Backend::Quenched, iterations, residual));
        }
        lambda_prev = lambda;
    }
    Err(Error::EigenNoConverge(format!(
        "inverse power iteration stalled near λ={lambda_prev} after {OUTER_CAP} outer steps"
    )))
}

/// Sanity bound: `0 < λ ≤ min_F d` (equality occurs when the minimum-degree
/// free node has no free neighbors, e.g. a 1×1 grounded system).
fn check_bounds(lambda: f64, dmin: f64) -> Result<()> {
    if lambda > 0.0 && lambda <= dmin * (1.0 + 1e-9) {
        Ok(())
    } else {
        Err(Error::EigenNoConverge(format!(
            "quenched λ₁={lambda} escapes the admissible interval (0, {dmin}]"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree_model::generate_ucm;
    use crate::spectral::dense::dense_smallest_eigen;
    use approx::assert_relative_eq;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn grounded_path3_at_endpoint() {
        let g = path(3);
        let p = PinningPartition::new([0], 3);
        let r = quenched_lambda1(&g, &p, 1e-10).unwrap();
        assert_relative_eq!(r.lambda1, (3.0 - 5f64.sqrt()) / 2.0, epsilon = 1e-10);
        assert_eq!(r.backend, Backend::Quenched);
    }

    #[test]
    fn grounded_single_edge() {
        let g = path(2);
        let p = PinningPartition::new([0], 2);
        let r = quenched_lambda1(&g, &p, 1e-10).unwrap();
        assert_relative_eq!(r.lambda1, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn grounded_triangle() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let p = PinningPartition::new([0], 3);
        let r = quenched_lambda1(&g, &p, 1e-10).unwrap();
        assert_relative_eq!(r.lambda1, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn grounded_cycle_c4() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let p = PinningPartition::new([0], 4);
        let r = quenched_lambda1(&g, &p, 1e-10).unwrap();
        assert_relative_eq!(r.lambda1, 2.0 - 2f64.sqrt(), epsilon = 1e-10);
    }

    #[test]
    fn operator_matches_dense_form() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]).unwrap();
        let p = PinningPartition::new([2], 5);
        let op = GroundedOperator::new(&g, &p).unwrap();
        let m = op.to_dense();
        let x = [0.3, -1.0, 0.25, 2.0];
        let mut y = vec![0.0; 4];
        op.matvec(&x, &mut y);
        assert_eq!(y, m.matvec(&x));
        // Diagonal keeps the FULL degree of node 1 and 3 (adjacent to pinned 2).
        assert_eq!(m.get(1, 1), 3.0);
    }

    #[test]
    fn cg_path_agrees_with_dense_oracle() {
        // 600 nodes, degree 3 everywhere: forces the CG branch (|F| > 512).
        let seq = vec![3usize; 600];
        let (g, _) = generate_ucm(&seq, 404, 40).unwrap();
        if !g.is_connected() {
            // Regular UCM at d=3 is a.s. connected; bail loudly if not.
            panic!("test graph unexpectedly disconnected");
        }
        let p = PinningPartition::new(0..40, 600);
        let r = quenched_lambda1(&g, &p, 1e-11).unwrap();
        let dense = dense_smallest_eigen(&quenched_grounded_dense(&g, &p).unwrap(), 1e-10).unwrap();
        assert!((r.lambda1 - dense).abs() <= 1e-8, "cg {} vs dense {}", r.lambda1, dense);
        assert!(r.lambda1 > 0.0 && r.lambda1 < 3.0);
    }

    #[test]
    fn cg_path_is_deterministic() {
        let seq = vec![3usize; 600];
        let (g, _) = generate_ucm(&seq, 404, 40).unwrap();
        let p = PinningPartition::new(0..40, 600);
        let a = quenched_lambda1(&g, &p, 1e-11).unwrap();
        let b = quenched_lambda1(&g, &p, 1e-11).unwrap();
        assert_eq!(a.lambda1.to_bits(), b.lambda1.to_bits());
        assert_eq!(a.iterations, b.iterations);
    }

    #[test]
    fn rejects_disconnected_and_degenerate_partitions() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let p = PinningPartition::new([0], 4);
        assert!(matches!(quenched_lambda1(&g, &p, 1e-10), Err(Error::NotConnected)));

        let g = path(3);
        assert!(matches!(
            quenched_lambda1(&g, &PinningPartition::new([], 3), 1e-10),
            Err(Error::EmptyPinnedSet)
        ));
        assert!(matches!(
            quenched_lambda1(&g, &PinningPartition::new([0, 1, 2], 3), 1e-10),
            Err(Error::EmptyFreeSet)
        ));
    }

    #[test]
    fn lambda_below_min_free_degree_on_star() {
        // Star K1,4: pin one leaf; free min degree is 1 and the free leaf
        // rows couple only to the hub, so λ₁ < 1 strictly here.
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let p = PinningPartition::new([1], 5);
        let r = quenched_lambda1(&g, &p, 1e-10).unwrap();
        assert!(r.lambda1 > 0.0 && r.lambda1 < 1.0, "λ={}", r.lambda1);
    }
}
