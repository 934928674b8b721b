//! Smallest-eigenvalue computations for grounded Laplacians.
//!
//! Three routes to λ₁:
//! * [`annealed`] — scalar characteristic-equation root under the degree
//!   mean-field approximation (exact for the rank-one structure, O(Q) per
//!   evaluation);
//! * [`quenched`] — the true principal-submatrix Laplacian of a concrete
//!   graph, via CG-powered inverse iteration with a dense fallback;
//! * [`dense`] — the in-repo symmetric eigensolver both of the above use as
//!   a cross-validation oracle.

pub mod annealed;
pub mod dense;
pub mod quenched;

pub use annealed::{annealed_grounded_matrix, annealed_lambda1, char_derivative, char_residual, AnnealedGroundedSystem};
pub use dense::{dense_eigenvalues, dense_smallest_eigen, dense_smallest_eigen_full, DenseMatrix, DENSE_ORACLE_CAP};
pub use quenched::{quenched_grounded_dense, quenched_lambda1, GroundedOperator, DENSE_FALLBACK};

use crate::graph::{Graph, PinningPartition};
use crate::Result;

/// Default relative tolerance of the annealed root finder.
pub const DEFAULT_ANNEALED_TOL: f64 = 1e-12;

/// Default Rayleigh-quotient tolerance of the quenched solver.
pub const DEFAULT_QUENCHED_TOL: f64 = 1e-10;

/// Which solver produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Annealed,
    Quenched,
    DenseOracle,
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Annealed => "annealed",
            Backend::Quenched => "quenched",
            Backend::DenseOracle => "dense_oracle",
        })
    }
}

/// User-selectable evaluation backend (the oracle is internal-only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalBackend {
    Annealed,
    Quenched,
}

impl EvalBackend {
    pub fn tag(self) -> Backend {
        match self {
            EvalBackend::Annealed => Backend::Annealed,
            EvalBackend::Quenched => Backend::Quenched,
        }
    }
}

impl std::fmt::Display for EvalBackend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.tag().fmt(f)
    }
}

impl std::str::FromStr for EvalBackend {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "annealed" => Ok(EvalBackend::Annealed),
            "quenched" => Ok(EvalBackend::Quenched),
            other => Err(format!("unknown backend '{other}' (expected annealed or quenched)")),
        }
    }
}

/// λ₁ of a grounded system plus the quantities every consumer wants with it.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub lambda1: f64,
    /// `1/λ₁`, the inverse synchronizability index.
    pub inverse: f64,
    pub backend: Backend,
    /// Solver-specific effort metric (Newton steps, rotations, CG steps).
    pub iterations: usize,
    /// Solver-specific residual (|g(λ)| or ‖Mv − λv‖).
    pub residual: f64,
}

impl SpectralResult {
    pub fn new(lambda1: f64, backend: Backend, iterations: usize, residual: f64) -> Self {
        debug_assert!(lambda1 > 0.0, "grounded λ₁ must be positive, got {lambda1}");
        SpectralResult {
            lambda1,
            inverse: 1.0 / lambda1,
            backend,
            iterations,
            residual,
        }
    }
}

/// Evaluate λ₁ of the grounded Laplacian of `(g, p)` under the requested
/// backend with default tolerances.
pub fn evaluate(g: &Graph, p: &PinningPartition, backend: EvalBackend) -> Result<SpectralResult> {
    let tol = match backend {
        EvalBackend::Annealed => DEFAULT_ANNEALED_TOL,
        EvalBackend::Quenched => DEFAULT_QUENCHED_TOL,
    };
    evaluate_with(g, p, backend, tol)
}

/// [`evaluate`] with an explicit solver tolerance.
pub fn evaluate_with(g: &Graph, p: &PinningPartition, backend: EvalBackend, tol: f64) -> Result<SpectralResult> {
    match backend {
        EvalBackend::Annealed => {
            let sys = AnnealedGroundedSystem::from_partition(&g.degree_vector(), p)?;
            annealed_lambda1(&sys, tol)
        }
        EvalBackend::Quenched => quenched_lambda1(g, p, tol),
    }
}
