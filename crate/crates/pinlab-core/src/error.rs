use thiserror::Error;

/// Errors produced by graph ingestion, generation and the spectral solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("empty input: no edges found")]
    EmptyInput,

    #[error("empty degree vector")]
    EmptyDegrees,

    #[error("node {node} has degree 0; positive degrees required")]
    ZeroDegree { node: usize },

    #[error("degree sum is odd; no simple graph realizes this sequence")]
    OddDegreeSum,

    #[error("degree {degree} is not realizable on {nodes} nodes")]
    DegreeTooLarge { degree: usize, nodes: usize },

    #[error("degree sequence is not graphical")]
    NotGraphical,

    #[error("simple-graph repair stalled after {swaps} swaps ({violations} violations left)")]
    RepairStalled { swaps: usize, violations: usize },

    #[error("budget {budget} out of range: need 1 <= budget < {nodes}")]
    BadBudget { budget: usize, nodes: usize },

    #[error("free node set is empty")]
    EmptyFreeSet,

    #[error("pinned node set is empty")]
    EmptyPinnedSet,

    #[error("graph is not connected")]
    NotConnected,

    #[error("eigenvalue {lambda} outside solver domain [0, {min_free_degree})")]
    OutOfDomain { lambda: f64, min_free_degree: f64 },

    #[error("matrix is not symmetric: max deviation {max_deviation:e}")]
    NotSymmetric { max_deviation: f64 },

    #[error("matrix size {size} exceeds dense solver cap {cap}")]
    DenseCapExceeded { size: usize, cap: usize },

    #[error("eigensolver did not converge: {0}")]
    EigenNoConverge(String),

    #[error("conjugate gradient stalled: residual {residual:e} after {iterations} iterations")]
    CgNoConverge { residual: f64, iterations: usize },

    #[error("{combinations} subsets exceed enumeration cap {cap}; use the threshold selector instead")]
    EnumerationCapExceeded { combinations: u128, cap: u64 },

    #[error("degree {k} outside distribution support [{lo}, {hi}]")]
    OutsideSupport { k: usize, lo: usize, hi: usize },

    #[error("invalid distribution parameters: {0}")]
    BadDistribution(String),

    #[error("no connected graph after {attempts} attempts (last sample: {components} components, largest {largest})")]
    ConnectivityExhausted {
        attempts: usize,
        components: usize,
        largest: usize,
    },

    #[error("graph with {nodes} nodes exceeds cycle-ratio size guard {cap}")]
    CycleRatioCapExceeded { nodes: usize, cap: usize },

    #[error("too few nodes: {nodes} (need at least {min})")]
    TooFewNodes { nodes: usize, min: usize },

    #[error("no admissible validation instance after {attempts} draws")]
    SamplingExhausted { attempts: usize },

    #[error("empty effectiveness curve")]
    EmptyCurve,

    #[error("baseline value {value} must be positive")]
    NonPositiveBaseline { value: f64 },

    #[error("solver failed at budget {budget}: {source}")]
    AtBudget {
        budget: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Annotate an error with the pinning budget it occurred at.
    pub fn at_budget(self, budget: usize) -> Error {
        Error::AtBudget {
            budget,
            source: Box::new(self),
        }
    }
}
