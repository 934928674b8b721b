//! Globally optimal driver-node (pinning) sets for network synchronization.
//!
//! The effectiveness of pinning a node set `P` in an undirected network is
//! measured by the smallest eigenvalue of the grounded Laplacian, the
//! principal submatrix of the Laplacian on the free nodes `F = V \ P`.
//! This crate provides:
//!
//! * graph ingestion and degree bookkeeping ([`graph`]),
//! * saturated/truncated power-law degree models and uniform configuration
//!   model sampling ([`degree_model`]),
//! * spectral backends for the smallest grounded-Laplacian eigenvalue —
//!   a scalar characteristic-equation solver for the annealed (degree
//!   mean-field) approximation, a sparse solver for the true graph, and a
//!   self-contained dense symmetric eigensolver used as oracle ([`spectral`]),
//! * pinning-set selection strategies: the threshold-optimal selector, the
//!   low-degree-prioritized rule, exhaustive enumeration, brute-force greedy,
//!   and centrality baselines ([`strategies`]),
//! * effectiveness curves and scalar summaries ([`metrics`]),
//! * randomized self-check suites for the structural properties the
//!   selectors rely on ([`validation`]).
//!
//! Data-parallel inner loops (enumeration, per-candidate greedy scoring,
//! per-source centrality accumulation) run on rayon when the default
//! `parallel` feature is enabled and fall back to sequential iteration
//! otherwise. Results are identical either way.

pub mod degree_model;
mod error;
pub mod graph;
pub mod metrics;
pub mod par;
pub mod rng;
pub mod spectral;
pub mod strategies;
pub mod validation;

pub use error::{Error, Result};
pub use graph::{DegreeHistogram, Graph, PinningPartition};
pub use spectral::{Backend, EvalBackend, SpectralResult};
pub use strategies::Strategy;
