//! Dense symmetric eigensolver used as the validation oracle.
//!
//! Classic two-stage scheme, implemented in-repo so the oracle has no
//! external numerical dependency: Householder reduction to symmetric
//! tridiagonal form, then the implicit-shift QL iteration for eigenvalues.
//! The reported smallest eigenvalue is verified by inverse iteration on the
//! tridiagonal form (orthogonally similar to the input, so 2-norm residuals
//! transfer unchanged).
//!
//! Solvers are sequential on purpose; callers parallelize across instances.

use crate::{Error, Result};

/// Largest matrix the oracle accepts; keeps worst-case solves in seconds.
pub const DENSE_ORACLE_CAP: usize = 2000;

/// Maximum tolerated `|a_ij − a_ji|` before the input is rejected.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// QL sweeps allowed per eigenvalue before giving up.
const QL_MAX_SWEEPS: usize = 50;

/// Row-major dense square matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    a: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix { n, a: vec![0.0; n * n] }
    }

    /// Build from explicit rows; panics if the rows are not square.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut m = DenseMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "row {i} has length {} in a {n}×{n} matrix", row.len());
            m.a[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.a.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest `|a_ij − a_ji|` over all pairs.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// `y = M x`.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            let row = &self.a[i * self.n..(i + 1) * self.n];
            y[i] = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
        y
    }
}

/// Householder reduction of a symmetric matrix (given as its scratch copy)
/// to tridiagonal form. Returns `(diag, subdiag)` with `subdiag[i]` coupling
/// rows `i` and `i+1` (`subdiag` has length `n`, last entry a zero sentinel
/// for the QL sweep).
fn householder_tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut e = vec![0.0; n];
    let idx = |i: usize, j: usize| i * n + j;
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let norm2: f64 = (k + 1..n).map(|i| a[idx(i, k)] * a[idx(i, k)]).sum();
        if norm2 == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let x0 = a[idx(k + 1, k)];
        // Reflect onto ∓‖x‖ e₁, sign chosen so v = x − αe₁ cannot cancel.
        let alpha = if x0 > 0.0 { -norm2.sqrt() } else { norm2.sqrt() };
        let vtv = 2.0 * (norm2 - alpha * x0);
        if vtv == 0.0 {
            e[k] = alpha;
            continue;
        }
        let beta = 2.0 / vtv;
        v[k + 1] = x0 - alpha;
        for i in (k + 2)..n {
            v[i] = a[idx(i, k)];
        }
        // p = β·A·v on the trailing block, then the symmetric rank-2 update
        // A ← A − v wᵀ − w vᵀ with w = p − (β pᵀv / 2) v.
        for i in (k + 1)..n {
            let mut s = 0.0;
            for j in (k + 1)..n {
                s += a[idx(i, j)] * v[j];
            }
            p[i] = beta * s;
        }
        let pv: f64 = ((k + 1)..n).map(|i| p[i] * v[i]).sum();
        let mu = beta * pv / 2.0;
        for i in (k + 1)..n {
            p[i] -= mu * v[i];
        }
        for i in (k + 1)..n {
            let (vi, wi) = (v[i], p[i]);
            for j in (k + 1)..=i {
                a[idx(i, j)] -= vi * p[j] + wi * v[j];
                a[idx(j, i)] = a[idx(i, j)];
            }
        }
        a[idx(k + 1, k)] = alpha;
        a[idx(k, k + 1)] = alpha;
        for i in (k + 2)..n {
            a[idx(i, k)] = 0.0;
            a[idx(k, i)] = 0.0;
        }
        e[k] = alpha;
    }
    if n >= 2 {
        e[n - 2] = a[idx(n - 1, n - 2)];
    }
    let d = (0..n).map(|i| a[idx(i, i)]).collect();
    (d, e)
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix; `d` ends
/// up holding the (unsorted) eigenvalues. Returns the total Givens-rotation
/// count as an iteration metric.
fn ql_implicit(d: &mut [f64], e: &mut [f64]) -> Result<usize> {
    let n = d.len();
    let mut rotations = 0usize;
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            // Find the first negligible coupling at or above l.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > QL_MAX_SWEEPS {
                return Err(Error::EigenNoConverge(format!(
                    "QL failed to isolate eigenvalue {l} after {QL_MAX_SWEEPS} sweeps"
                )));
            }
            // Wilkinson-style shift from the leading 2×2 block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0f64, 1.0f64, 0.0f64);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Deflate: rotation product annihilated prematurely.
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                let t = (d[i] - g) * s + 2.0 * c * b;
                p = s * t;
                d[i + 1] = g + p;
                g = c * t - b;
                rotations += 1;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(rotations)
}

/// One LU factorization of `(T − λI)` with partial pivoting, kept so the
/// right-hand side can be re-run for extra inverse-iteration passes.
struct TridiagLu {
    /// Pivots (diagonal of U).
    u: Vec<f64>,
    /// First superdiagonal of U.
    v: Vec<f64>,
    /// Second superdiagonal of U (fill-in from pivoting).
    w: Vec<f64>,
    /// Elimination multipliers.
    mult: Vec<f64>,
    /// Whether rows i, i+1 were swapped at step i.
    swapped: Vec<bool>,
}

impl TridiagLu {
    fn factor(d: &[f64], e: &[f64], lambda: f64, tiny: f64) -> Self {
        let n = d.len();
        let mut u = vec![0.0; n];
        let mut v = vec![0.0; n];
        let mut w = vec![0.0; n];
        let mut mult = vec![0.0; n];
        let mut swapped = vec![false; n];
        let mut bar_p = d[0] - lambda;
        let mut bar_q = if n > 1 { e[0] } else { 0.0 };
        for i in 0..n.saturating_sub(1) {
            let low_p = e[i];
            let low_d = d[i + 1] - lambda;
            let low_q = if i + 1 < n - 1 { e[i + 1] } else { 0.0 };
            if low_p.abs() >= bar_p.abs() {
                u[i] = low_p;
                v[i] = low_d;
                w[i] = low_q;
                if u[i] == 0.0 {
                    u[i] = tiny;
                }
                let m = bar_p / u[i];
                mult[i] = m;
                swapped[i] = true;
                bar_p = bar_q - m * v[i];
                bar_q = -m * w[i];
            } else {
                u[i] = bar_p;
                v[i] = bar_q;
                w[i] = 0.0;
                if u[i] == 0.0 {
                    u[i] = tiny;
                }
                let m = low_p / u[i];
                mult[i] = m;
                bar_p = low_d - m * v[i];
                bar_q = low_q;
            }
        }
        u[n - 1] = if bar_p == 0.0 { tiny } else { bar_p };
        TridiagLu { u, v, w, mult, swapped }
    }

    /// Apply the recorded row operations to `rhs` (forward pass).
    fn forward(&self, rhs: &mut [f64]) {
        let n = rhs.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                rhs.swap(i, i + 1);
            }
            rhs[i + 1] -= self.mult[i] * rhs[i];
        }
    }

    /// Back substitution, overwriting `rhs` with the solution.
    fn backward(&self, rhs: &mut [f64]) {
        let n = rhs.len();
        rhs[n - 1] /= self.u[n - 1];
        if n >= 2 {
            rhs[n - 2] = (rhs[n - 2] - self.v[n - 2] * rhs[n - 1]) / self.u[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            rhs[i] = (rhs[i] - self.v[i] * rhs[i + 1] - self.w[i] * rhs[i + 2]) / self.u[i];
        }
    }
}

/// `‖T x − λ x‖₂` for unit `x` on a tridiagonal `(d, e)`.
fn tridiag_residual(d: &[f64], e: &[f64], lambda: f64, x: &[f64]) -> f64 {
    let n = d.len();
    let mut sq = 0.0;
    for i in 0..n {
        let mut r = (d[i] - lambda) * x[i];
        if i > 0 {
            r += e[i - 1] * x[i - 1];
        }
        if i + 1 < n {
            r += e[i] * x[i + 1];
        }
        sq += r * r;
    }
    sq.sqrt()
}

/// Inverse iteration on the tridiagonal form at an (accurate) eigenvalue
/// estimate; returns the achieved residual `‖T x − λ x‖₂` with `‖x‖ = 1`.
fn inverse_iteration_residual(d: &[f64], e: &[f64], lambda: f64) -> f64 {
    let n = d.len();
    let norm_t = d.iter().fold(0.0f64, |m, x| m.max(x.abs()))
        + 2.0 * e.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tiny = f64::EPSILON * norm_t.max(f64::MIN_POSITIVE);
    let lu = TridiagLu::factor(d, e, lambda, tiny);
    let mut x = vec![1.0; n];
    let mut best = f64::INFINITY;
    for pass in 0..4 {
        if pass == 0 {
            // First pass solves U x = 1 only — the classic inverse-iteration
            // shortcut; the nearly singular pivot dominates regardless of the
            // transformed right-hand side.
            lu.backward(&mut x);
        } else {
            lu.forward(&mut x);
            lu.backward(&mut x);
        }
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            x.iter_mut().for_each(|v| *v = 1.0);
            continue;
        }
        x.iter_mut().for_each(|v| *v /= norm);
        let res = tridiag_residual(d, e, lambda, &x);
        if res < best {
            best = res;
        }
        if best <= f64::EPSILON * norm_t * 8.0 {
            break;
        }
    }
    best
}

/// Validated reduction: `(unsorted eigenvalues, tridiagonal d, tridiagonal
/// e, rotation count)`.
fn decompose(m: &DenseMatrix) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>, usize)> {
    let n = m.size();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if n > DENSE_ORACLE_CAP {
        return Err(Error::DenseCapExceeded {
            size: n,
            cap: DENSE_ORACLE_CAP,
        });
    }
    let asym = m.max_asymmetry();
    if asym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric { max_deviation: asym });
    }
    let mut scratch = m.a.clone();
    let (d, e) = householder_tridiagonalize(&mut scratch, n);
    let (mut dv, mut ev) = (d.clone(), e.clone());
    let rotations = ql_implicit(&mut dv, &mut ev)?;
    Ok((dv, d, e, rotations))
}

/// All eigenvalues of a symmetric matrix, ascending. Same validation rules
/// as [`dense_smallest_eigen`].
pub fn dense_eigenvalues(m: &DenseMatrix) -> Result<Vec<f64>> {
    let (mut vals, _, _, _) = decompose(m)?;
    vals.sort_unstable_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    Ok(vals)
}

/// Smallest eigenvalue with the residual check `‖Mv − λv‖ ≤ tol·‖M‖_F`.
pub fn dense_smallest_eigen(m: &DenseMatrix, tol: f64) -> Result<f64> {
    dense_smallest_eigen_full(m, tol).map(|(lambda, _, _)| lambda)
}

/// Smallest eigenvalue plus `(rotation count, residual)` diagnostics.
pub fn dense_smallest_eigen_full(m: &DenseMatrix, tol: f64) -> Result<(f64, usize, f64)> {
    let (vals, d0, e0, rotations) = decompose(m)?;
    let lambda = vals.iter().copied().fold(f64::INFINITY, f64::min);
    if m.size() == 1 {
        return Ok((lambda, rotations, 0.0));
    }
    let residual = inverse_iteration_residual(&d0, &e0, lambda);
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);
    if residual > tol * scale {
        return Err(Error::EigenNoConverge(format!(
            "inverse-iteration residual {residual:.3e} exceeds {:.3e}",
            tol * scale
        )));
    }
    Ok((lambda, rotations, residual))
}
