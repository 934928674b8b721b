//! Saturated/truncated power-law degree distributions and uniform
//! configuration model (UCM) graph generation.
//!
//! The distribution is `p_k ∝ (k + k_sat)^(-γ) · exp(-k / k_cut)` on an
//! integer support `[k_min, k_max]`. Sampling, stub matching and swap repair
//! all draw from seeded streams of one counter-based PRNG (ChaCha8), so every
//! artifact is a pure function of `(parameters, seed)`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::io::{self, BufRead, Write};

use rand::Rng;

use crate::graph::{largest_connected_component, Graph};
use crate::rng::{seeded_stream, StreamId};
use crate::{Error, Result};

/// Default number of whole stub-matching attempts before switching to swap
/// repair.
pub const DEFAULT_MAX_RESTARTS: usize = 40;

/// Default bound on regeneration attempts when requiring connectivity.
pub const DEFAULT_CONNECT_ATTEMPTS: usize = 50;

/// Discrete degree distribution `p_k = a (k + k_sat)^(-γ) exp(-k / k_cut)`
/// with the normalization `a` fixed so the support sums to one.
///
/// `k_cut = f64::INFINITY` disables the exponential cutoff.
#[derive(Debug, Clone)]
pub struct DegreeDistribution {
    gamma: f64,
    k_sat: f64,
    k_cut: f64,
    k_min: usize,
    k_max: usize,
    pmf: Vec<f64>,
    cdf: Vec<f64>,
}

impl DegreeDistribution {
    pub fn new(gamma: f64, k_sat: f64, k_cut: f64, k_min: usize, k_max: usize) -> Result<Self> {
        if !(gamma > 0.0) {
            return Err(Error::BadDistribution(format!("exponent must be positive, got {gamma}")));
        }
        if !(k_sat >= 0.0) {
            return Err(Error::BadDistribution(format!("saturation must be nonnegative, got {k_sat}")));
        }
        if !(k_cut > 0.0) {
            return Err(Error::BadDistribution(format!("cutoff must be positive, got {k_cut}")));
        }
        if k_min < 1 || k_min > k_max {
            return Err(Error::BadDistribution(format!(
                "support [{k_min}, {k_max}] must satisfy 1 <= k_min <= k_max"
            )));
        }
        let weights: Vec<f64> = (k_min..=k_max)
            .map(|k| (k as f64 + k_sat).powf(-gamma) * (-(k as f64) / k_cut).exp())
            .collect();
        // Weights are non-increasing in k; summing smallest-first keeps the
        // normalization accurate on long heavy-tailed supports.
        let total: f64 = weights.iter().rev().sum();
        if !(total > 0.0) || !total.is_finite() {
            return Err(Error::BadDistribution(format!(
                "weights sum to {total} over [{k_min}, {k_max}]"
            )));
        }
        let pmf: Vec<f64> = weights.iter().map(|w| w / total).collect();
        let mut cdf = pmf.clone();
        for i in 1..cdf.len() {
            cdf[i] += cdf[i - 1];
        }
        *cdf.last_mut().unwrap() = 1.0;
        Ok(DegreeDistribution {
            gamma,
            k_sat,
            k_cut,
            k_min,
            k_max,
            pmf,
            cdf,
        })
    }

    /// Distribution on the widest simple-graph-feasible support `[1, n-1]`.
    pub fn with_default_support(gamma: f64, k_sat: f64, k_cut: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewNodes { nodes: n, min: 2 });
        }
        Self::new(gamma, k_sat, k_cut, 1, n - 1)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn k_sat(&self) -> f64 {
        self.k_sat
    }

    pub fn k_cut(&self) -> f64 {
        self.k_cut
    }

    /// Inclusive support bounds `(k_min, k_max)`.
    pub fn support(&self) -> (usize, usize) {
        (self.k_min, self.k_max)
    }

    /// Probability mass at `k`; errors outside the support.
    pub fn pmf(&self, k: usize) -> Result<f64> {
        if k < self.k_min || k > self.k_max {
            return Err(Error::OutsideSupport {
                k,
                lo: self.k_min,
                hi: self.k_max,
            });
        }
        Ok(self.pmf[k - self.k_min])
    }

    /// One inverse-CDF draw.
    fn sample_one(&self, rng: &mut impl Rng) -> usize {
        let u: f64 = rng.gen();
        let idx = self.cdf.partition_point(|&cum| cum <= u).min(self.cdf.len() - 1);
        self.k_min + idx
    }
}

/// A degree sequence drawn from a [`DegreeDistribution`].
///
/// If the raw draw summed odd, one uniformly chosen node had its degree
/// incremented; `parity_fix` records which, so the sequence is reproducible
/// and the (single) out-of-distribution entry is identifiable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledSequence {
    pub degrees: Vec<usize>,
    pub seed: u64,
    pub parity_fix: Option<usize>,
}

/// Draw `n` i.i.d. degrees by inverse CDF, then fix parity if needed.
pub fn sample_degree_sequence(dist: &DegreeDistribution, n: usize, seed: u64) -> Result<SampledSequence> {
    if n < 2 {
        return Err(Error::TooFewNodes { nodes: n, min: 2 });
    }
    let mut rng = seeded_stream(seed, StreamId::DegreeSampling);
    let mut degrees: Vec<usize> = (0..n).map(|_| dist.sample_one(&mut rng)).collect();
    let parity_fix = if degrees.iter().sum::<usize>() % 2 == 1 {
        let node = rng.gen_range(0..n);
        degrees[node] += 1;
        Some(node)
    } else {
        None
    };
    Ok(SampledSequence {
        degrees,
        seed,
        parity_fix,
    })
}

/// Erdős–Gallai test: is `seq` the degree sequence of some simple graph?
///
/// Checks the even-sum condition and, on the descending rearrangement `d`,
/// `Σ_{i<=k} d_i <= k(k-1) + Σ_{i>k} min(d_i, k)` for every prefix `k`.
pub fn is_graphical(seq: &[usize]) -> bool {
    if seq.is_empty() {
        return true;
    }
    let n = seq.len();
    if seq.iter().any(|&d| d >= n) {
        return false;
    }
    if seq.iter().sum::<usize>() % 2 == 1 {
        return false;
    }
    let mut d: Vec<usize> = seq.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    // Suffix sums for the Σ min(d_i, k) term: within the suffix, entries > k
    // contribute k each and the rest contribute themselves.
    let mut suffix = vec![0u64; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + d[i] as u64;
    }
    let mut prefix: u64 = 0;
    for k in 1..=n {
        prefix += d[k - 1] as u64;
        // First index in d[k..] with value <= k (d is descending).
        let split = k + d[k..].partition_point(|&x| x > k);
        let tail_min = (split - k) as u64 * k as u64 + suffix[split];
        if prefix > k as u64 * (k as u64 - 1) + tail_min {
            return false;
        }
        // Prefixes beyond the Durfee square cannot newly fail.
        if d[k - 1] < k {
            break;
        }
    }
    true
}

/// Generation diagnostics: how many whole attempts were rejected and how many
/// repair swaps were applied (0 means the sample is exactly uniform over
/// simple realizations).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct UcmReport {
    pub rejection_attempts: usize,
    pub repair_swaps: usize,
    /// Swap repair stalled and the graph was rebuilt from scratch (greedy
    /// realization + shuffle). Happens only on sequences whose simple
    /// realizations are combinatorially tight, e.g. several near-saturated
    /// hubs forcing almost every low-degree node onto a hub.
    pub rebuilt: bool,
}

/// Sample a uniform-configuration-model graph with degree vector exactly
/// `seq`.
///
/// Stub matching with whole-attempt rejection: a shuffled pairing containing
/// any self-loop or multi-edge is discarded. If the initial attempt plus
/// `max_restarts` retries all fail, the last multigraph is repaired by
/// double-edge swaps (uniform random partner edge, never increasing the
/// violation count, with a periodic constructive scan) until simple. If even
/// repair stalls — possible when the sequence is barely realizable — the
/// graph is rebuilt by greedy realization plus a randomizing shuffle, noted
/// in the report.
pub fn generate_ucm(seq: &[usize], seed: u64, max_restarts: usize) -> Result<(Graph, UcmReport)> {
    let n = seq.len();
    if n < 2 {
        return Err(Error::TooFewNodes { nodes: n, min: 2 });
    }
    if let Some(&dmax) = seq.iter().max() {
        if dmax >= n {
            return Err(Error::DegreeTooLarge {
                degree: dmax,
                nodes: n,
            });
        }
    }
    if seq.iter().sum::<usize>() % 2 == 1 {
        return Err(Error::OddDegreeSum);
    }
    if !is_graphical(seq) {
        return Err(Error::NotGraphical);
    }

    let mut stubs: Vec<usize> = Vec::with_capacity(seq.iter().sum());
    for (node, &d) in seq.iter().enumerate() {
        stubs.extend(std::iter::repeat(node).take(d));
    }

    let mut rng = seeded_stream(seed, StreamId::StubMatching);
    let mut report = UcmReport::default();
    let mut last_attempt = loop {
        // Fisher–Yates shuffle, then pair consecutive stubs.
        for i in (1..stubs.len()).rev() {
            stubs.swap(i, rng.gen_range(0..=i));
        }
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(stubs.len() / 2);
        let mut violations = 0usize;
        let mut mult: HashMap<(usize, usize), usize> = HashMap::new();
        for pair in stubs.chunks_exact(2) {
            let e = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            violations += add_delta(&mult, e);
            *mult.entry(e).or_insert(0) += 1;
            edges.push(e);
        }
        if violations == 0 {
            let g = Graph::from_edges(n, edges)?;
            debug_assert_eq!(g.degree_vector(), seq);
            return Ok((g, report));
        }
        report.rejection_attempts += 1;
        if report.rejection_attempts > max_restarts {
            break edges;
        }
    };

    let mut repair = seeded_stream(seed, StreamId::SwapRepair);
    let edges = match repair_by_swaps(&mut last_attempt, n, &mut repair) {
        Ok(swaps) => {
            report.repair_swaps = swaps;
            last_attempt
        }
        Err(Error::RepairStalled { swaps, .. }) => {
            let mut edges = greedy_realization(seq)?;
            report.repair_swaps = swaps + shuffle_edges(&mut edges, &mut repair);
            report.rebuilt = true;
            edges
        }
        Err(e) => return Err(e),
    };
    let g = Graph::from_edges(n, edges)?;
    if g.degree_vector() != seq {
        // Swaps preserve degrees, so this is unreachable; keep the contract
        // checked rather than assumed.
        return Err(Error::NotGraphical);
    }
    Ok((g, report))
}

/// Violation increase from adding edge `e` (canonical order) to a multiset:
/// self-loops always violate, a non-loop violates when already present.
fn add_delta(mult: &HashMap<(usize, usize), usize>, e: (usize, usize)) -> usize {
    if e.0 == e.1 {
        1
    } else {
        usize::from(mult.get(&e).copied().unwrap_or(0) > 0)
    }
}

/// Working state for swap repair: edge multiplicities keyed by canonical
/// pair, plus per-node neighbor multiplicities for non-neighbor queries.
struct EdgeMultiset {
    mult: HashMap<(usize, usize), usize>,
    adj: Vec<HashMap<usize, usize>>,
}

impl EdgeMultiset {
    fn new(n: usize, edges: &[(usize, usize)]) -> (Self, usize) {
        let mut s = EdgeMultiset {
            mult: HashMap::new(),
            adj: vec![HashMap::new(); n],
        };
        let mut violations = 0;
        for &e in edges {
            violations += s.insert(e) as usize;
        }
        (s, violations)
    }

    /// Add one copy of `e`; returns the violation-count change (0 or +1).
    fn insert(&mut self, e: (usize, usize)) -> isize {
        let delta = add_delta(&self.mult, e) as isize;
        *self.mult.entry(e).or_insert(0) += 1;
        *self.adj[e.0].entry(e.1).or_insert(0) += 1;
        if e.0 != e.1 {
            *self.adj[e.1].entry(e.0).or_insert(0) += 1;
        }
        delta
    }

    /// Remove one copy of `e`; returns the violation-count change (0 or −1).
    fn remove(&mut self, e: (usize, usize)) -> isize {
        let count = self.mult.get_mut(&e).expect("edge present");
        *count -= 1;
        let gone = *count > 0;
        *self.adj[e.0].get_mut(&e.1).expect("adjacent") -= 1;
        if e.0 != e.1 {
            *self.adj[e.1].get_mut(&e.0).expect("adjacent") -= 1;
        }
        if e.0 == e.1 {
            -1
        } else {
            -isize::from(gone)
        }
    }

    fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.adj[u].get(&v).copied().unwrap_or(0)
    }

    fn is_violating(&self, e: (usize, usize)) -> bool {
        e.0 == e.1 || self.mult[&e] > 1
    }

    /// Violation change if `{old[0], old[1]}` were replaced by
    /// `{new[0], new[1]}`; the multiset is restored before returning.
    fn probe(&mut self, old: [(usize, usize); 2], new: [(usize, usize); 2]) -> isize {
        let mut delta = 0isize;
        delta += self.remove(old[0]);
        delta += self.remove(old[1]);
        delta += self.insert(new[0]);
        delta += self.insert(new[1]);
        self.remove(new[1]);
        self.remove(new[0]);
        self.insert(old[1]);
        self.insert(old[0]);
        delta
    }
}

/// How many random-walk attempts between deterministic fix scans.
const SCAN_INTERVAL: usize = 8192;

/// One in this many walk attempts is a mixing move: both edges uniform
/// instead of one violating. Mixing rewires regions no violating edge
/// touches, which matters because repair swaps only create edges incident to
/// violating endpoints — hub-heavy graphs can otherwise reach states whose
/// fix requires an edge between two untouched periphery nodes.
const MIXING_ONE_IN: usize = 16;

/// Search every violating edge for a strictly improving partner by direct
/// construction: cross `(a, b)` with an existing edge `(x, y)` where `x` is a
/// non-neighbor of `a`, forming `(a, x)` and `(b, y)`. Returns the edge
/// indices, replacement pair, and (negative) violation change.
///
/// This is the escape hatch for near-saturated hubs, where a uniformly
/// random partner nearly never lands in the thin set of valid rewirings.
fn find_strict_fix(
    edges: &[(usize, usize)],
    state: &mut EdgeMultiset,
    n: usize,
) -> Option<(usize, usize, [(usize, usize); 2], isize)> {
    for i in 0..edges.len() {
        let (a, b) = edges[i];
        if !state.is_violating((a, b)) {
            continue;
        }
        // Try both roles: the new partner of `head` is drawn from head's
        // non-neighbors, and `tail` takes the partner's other endpoint.
        for (head, tail) in [(a, b), (b, a)] {
            for x in 0..n {
                if x == head || state.multiplicity(head, x) > 0 {
                    continue;
                }
                let mut nbrs: Vec<usize> = state.adj[x]
                    .iter()
                    .filter(|&(_, &m)| m > 0)
                    .map(|(&y, _)| y)
                    .collect();
                nbrs.sort_unstable();
                for y in nbrs {
                    let old = [(a, b), (x.min(y), x.max(y))];
                    let new = [(head.min(x), head.max(x)), (tail.min(y), tail.max(y))];
                    if new == old {
                        continue;
                    }
                    let delta = state.probe(old, new);
                    if delta < 0 {
                        // (x, y) cannot be the violating edge itself: that
                        // would need head adjacent to x. Any index holding
                        // the pair therefore differs from i.
                        let j = edges
                            .iter()
                            .position(|&e| e == old[1])
                            .expect("partner edge present");
                        return Some((i, j, new, delta));
                    }
                }
            }
        }
    }
    None
}

/// Double-edge-swap repair of a multigraph edge list until simple.
///
/// Targets the lowest-index violating edge (or, one attempt in
/// [`MIXING_ONE_IN`], a uniform edge), pairs it with a uniformly random
/// partner edge, evaluates both crossings, and accepts the better one when it
/// does not increase the violation count. Neutral and mixing moves reshape
/// the graph so the walk cannot deadlock; every [`SCAN_INTERVAL`] attempts
/// without a new minimum, a deterministic scan ([`find_strict_fix`]) picks
/// off violations the random walk is unlikely to hit. Errors if no new
/// minimum is reached within the patience budget.
fn repair_by_swaps(edges: &mut [(usize, usize)], n: usize, rng: &mut impl Rng) -> Result<usize> {
    let (mut state, mut violations) = EdgeMultiset::new(n, edges);

    // Worklist of edge indices to inspect, lazily validated on pop. Entries
    // can go stale (another swap cleaned their edge) and violations can
    // appear at indices not in the list (a neutral swap dirtied a copy held
    // elsewhere), so an empty list triggers a full rescan.
    let mut worklist: BTreeSet<usize> =
        (0..edges.len()).filter(|&i| state.is_violating(edges[i])).collect();
    // Churn between minima is unbounded in principle, so the budget is
    // patience: attempts made without reaching a new minimum violation count.
    let patience = 20_000 + 50 * edges.len();
    let mut best_violations = violations;
    let mut since_progress = 0usize;
    let mut swaps = 0usize;
    loop {
        if violations == 0 {
            return Ok(swaps);
        }
        if since_progress > patience {
            return Err(Error::RepairStalled { swaps, violations });
        }
        since_progress += 1;
        let (bad, partner, new, delta) = if since_progress % SCAN_INTERVAL == 0 {
            match find_strict_fix(edges, &mut state, n) {
                Some(hit) => hit,
                None => continue,
            }
        } else {
            let mixing = rng.gen_range(0..MIXING_ONE_IN) == 0;
            let bad = if mixing {
                rng.gen_range(0..edges.len())
            } else {
                loop {
                    match worklist.pop_first() {
                        Some(i) if state.is_violating(edges[i]) => break i,
                        Some(_) => continue,
                        None => {
                            worklist =
                                (0..edges.len()).filter(|&i| state.is_violating(edges[i])).collect();
                            debug_assert!(!worklist.is_empty(), "violations > 0 implies a violating edge");
                        }
                    }
                }
            };
            let partner = rng.gen_range(0..edges.len());
            let coin = rng.gen_bool(0.5);
            if partner == bad {
                worklist.insert(bad);
                continue;
            }
            let (a, b) = edges[bad];
            let (c, d) = edges[partner];
            let old = [(a, b), (c, d)];
            // Both ways of crossing the two edges; keep the more improving
            // one, breaking ties with the coin so neither orientation is
            // favored. A crossing identical to the current pair is a no-op.
            let fwd = [(a.min(c), a.max(c)), (b.min(d), b.max(d))];
            let rev = [(a.min(d), a.max(d)), (b.min(c), b.max(c))];
            let d_fwd = (fwd != old).then(|| state.probe(old, fwd));
            let d_rev = (rev != old).then(|| state.probe(old, rev));
            let (new, delta) = match (d_fwd, d_rev) {
                (None, None) => {
                    worklist.insert(bad);
                    continue;
                }
                (Some(df), None) => (fwd, df),
                (None, Some(dr)) => (rev, dr),
                (Some(df), Some(dr)) => {
                    if df < dr || (df == dr && coin) {
                        (fwd, df)
                    } else {
                        (rev, dr)
                    }
                }
            };
            if delta > 0 {
                worklist.insert(bad);
                continue;
            }
            (bad, partner, new, delta)
        };
        let old = [edges[bad], edges[partner]];
        state.remove(old[0]);
        state.remove(old[1]);
        state.insert(new[0]);
        state.insert(new[1]);
        edges[bad] = new[0];
        edges[partner] = new[1];
        violations = (violations as isize + delta) as usize;
        swaps += 1;
        worklist.insert(bad);
        worklist.insert(partner);
        if violations < best_violations {
            best_violations = violations;
            since_progress = 0;
        }
    }
}

/// Edge-switch rounds per edge when shuffling a rebuilt realization.
const SHUFFLE_PER_EDGE: usize = 10;

/// Build one simple realization of a graphical sequence by the largest-first
/// greedy rule (Havel–Hakimi): repeatedly connect the node of largest
/// remaining demand to the next-largest demands.
///
/// Heads are satisfied completely and retired, so no pair repeats and no
/// loops arise; the greedy choice preserves graphicality at every step.
fn greedy_realization(seq: &[usize]) -> Result<Vec<(usize, usize)>> {
    let mut edges = Vec::with_capacity(seq.iter().sum::<usize>() / 2);
    let mut heap: BTreeSet<(usize, usize)> =
        seq.iter().enumerate().filter(|&(_, &d)| d > 0).map(|(i, &d)| (d, i)).collect();
    while let Some(&(d, u)) = heap.last() {
        heap.remove(&(d, u));
        if heap.len() < d {
            // Unreachable behind the Erdős–Gallai gate; kept as a guard.
            return Err(Error::NotGraphical);
        }
        let targets: Vec<(usize, usize)> = heap.iter().rev().take(d).copied().collect();
        for (dv, v) in targets {
            heap.remove(&(dv, v));
            edges.push((u.min(v), u.max(v)));
            if dv > 1 {
                heap.insert((dv - 1, v));
            }
        }
    }
    Ok(edges)
}

/// Randomize a simple edge list in place with degree-preserving double-edge
/// switches, rejecting any switch that would create a loop or duplicate.
/// Returns the number of switches applied.
fn shuffle_edges(edges: &mut [(usize, usize)], rng: &mut impl Rng) -> usize {
    let mut present: HashSet<(usize, usize)> = edges.iter().copied().collect();
    let mut applied = 0;
    for _ in 0..SHUFFLE_PER_EDGE * edges.len() {
        let i = rng.gen_range(0..edges.len());
        let j = rng.gen_range(0..edges.len());
        let coin = rng.gen_bool(0.5);
        if i == j {
            continue;
        }
        let (a, b) = edges[i];
        let (x, y) = if coin { edges[j] } else { (edges[j].1, edges[j].0) };
        if a == x || b == y {
            continue;
        }
        let n1 = (a.min(x), a.max(x));
        let n2 = (b.min(y), b.max(y));
        if n1 == n2 || present.contains(&n1) || present.contains(&n2) {
            continue;
        }
        present.remove(&edges[i]);
        present.remove(&edges[j]);
        present.insert(n1);
        present.insert(n2);
        edges[i] = n1;
        edges[j] = n2;
        applied += 1;
    }
    applied
}

/// How to guarantee a connected sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectPolicy {
    /// Resample with seed+1, seed+2, ... until a connected graph appears.
    RetryNewSeed,
    /// Keep the largest connected component of the first sample.
    TakeLcc,
}

impl std::fmt::Display for ConnectPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ConnectPolicy::RetryNewSeed => "retry_new_seed",
            ConnectPolicy::TakeLcc => "take_lcc",
        })
    }
}

impl std::str::FromStr for ConnectPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "retry_new_seed" => Ok(ConnectPolicy::RetryNewSeed),
            "take_lcc" => Ok(ConnectPolicy::TakeLcc),
            other => Err(format!("unknown connectivity policy '{other}' (expected retry_new_seed or take_lcc)")),
        }
    }
}

/// Provenance of one connected sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenReport {
    /// Seed that produced the returned graph (>= requested seed under retry).
    pub seed_used: u64,
    /// Sampling attempts consumed (1 = first try succeeded).
    pub attempts: usize,
    pub parity_fix: Option<usize>,
    pub ucm: UcmReport,
    /// Nodes discarded by the take_lcc policy (0 under retry_new_seed).
    pub dropped_nodes: usize,
}

/// Sample a connected UCM graph from `dist`, enforcing connectivity per
/// `policy`. Non-graphical draws count as failed attempts under retry.
pub fn connect_or_regenerate(
    dist: &DegreeDistribution,
    n: usize,
    seed: u64,
    policy: ConnectPolicy,
    max_attempts: usize,
) -> Result<(Graph, GenReport)> {
    let mut last_stats: Option<(usize, usize)> = None;
    let attempts_allowed = match policy {
        ConnectPolicy::RetryNewSeed => max_attempts.max(1),
        ConnectPolicy::TakeLcc => 1,
    };
    for attempt in 0..attempts_allowed {
        let attempt_seed = seed + attempt as u64;
        let sample = sample_degree_sequence(dist, n, attempt_seed)?;
        let (graph, ucm) = match generate_ucm(&sample.degrees, attempt_seed, DEFAULT_MAX_RESTARTS) {
            Ok(out) => out,
            Err(Error::NotGraphical | Error::DegreeTooLarge { .. }) if policy == ConnectPolicy::RetryNewSeed => {
                continue;
            }
            Err(e) => return Err(e),
        };
        let report = GenReport {
            seed_used: attempt_seed,
            attempts: attempt + 1,
            parity_fix: sample.parity_fix,
            ucm,
            dropped_nodes: 0,
        };
        if graph.is_connected() {
            return Ok((graph, report));
        }
        match policy {
            ConnectPolicy::TakeLcc => {
                let full = graph.node_count();
                let (lcc, _) = largest_connected_component(&graph);
                let dropped = full - lcc.node_count();
                return Ok((
                    lcc,
                    GenReport {
                        dropped_nodes: dropped,
                        ..report
                    },
                ));
            }
            ConnectPolicy::RetryNewSeed => {
                let comps = graph.components();
                let largest = comps.iter().map(Vec::len).max().unwrap_or(0);
                last_stats = Some((comps.len(), largest));
            }
        }
    }
    let (components, largest) = last_stats.unwrap_or((0, 0));
    Err(Error::ConnectivityExhausted {
        attempts: attempts_allowed,
        components,
        largest,
    })
}

/// Write a degree sequence, one integer per line.
pub fn write_degree_sequence(w: &mut impl Write, seq: &[usize]) -> io::Result<()> {
    for d in seq {
        writeln!(w, "{d}")?;
    }
    Ok(())
}

/// Read a degree sequence written by [`write_degree_sequence`]; blank lines
/// and `#` comments are tolerated.
pub fn read_degree_sequence(r: impl BufRead) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse {
            line: idx + 1,
            reason: e.to_string(),
        })?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let d: usize = t.parse().map_err(|_| Error::Parse {
            line: idx + 1,
            reason: format!("expected one integer, got {t:?}"),
        })?;
        out.push(d);
    }
    if out.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(out)
}
