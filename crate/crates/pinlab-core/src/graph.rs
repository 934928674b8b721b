//! Undirected simple graphs, degree bookkeeping and pinning partitions.
//!
//! Node ids are dense `0..N-1` after ingestion; original edge-list labels are
//! kept in a side map for reporting. `Graph` and [`DegreeHistogram`] are
//! immutable once built and safe to share across threads.

use std::collections::{HashMap, HashSet, VecDeque};
use std::io::BufRead;

use crate::{Error, Result};

/// Undirected simple graph: adjacency lists, edge list and degree sums.
///
/// Invariants: no self-loops, no duplicate edges, neighbor lists sorted
/// ascending, `degree(n) == neighbors(n).len()` and
/// `degree_sum == 2 * edge_count`.
#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    labels: Vec<i64>,
}

impl Graph {
    /// Build a graph from clean edge pairs over `0..node_count`.
    ///
    /// Rejects self-loops, duplicates and out-of-range endpoints; use
    /// [`load_edge_list`] for permissive ingestion of raw files.
    pub fn from_edges(node_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut canonical = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Parse {
                    line: canonical.len() + 1,
                    reason: format!("self-loop at node {a}"),
                });
            }
            if a >= node_count || b >= node_count {
                return Err(Error::Parse {
                    line: canonical.len() + 1,
                    reason: format!("edge ({a}, {b}) out of range for {node_count} nodes"),
                });
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::Parse {
                    line: canonical.len() + 1,
                    reason: format!("duplicate edge ({}, {})", e.0, e.1),
                });
            }
            canonical.push(e);
        }
        canonical.sort_unstable();
        let mut adj = vec![Vec::new(); node_count];
        for &(a, b) in &canonical {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            adj,
            edges: canonical,
            labels: (0..node_count as i64).collect(),
        })
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as canonical `(low, high)` pairs, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adj[node].len()
    }

    pub fn degree_vector(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Sum of all degrees, `K = 2 * edge_count`.
    pub fn degree_sum(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Original label of a node (identity for generated graphs).
    pub fn label(&self, node: usize) -> i64 {
        self.labels[node]
    }

    pub fn is_connected(&self) -> bool {
        if self.adj.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.adj.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.adj.len()
    }

    /// Connected components as sorted node lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn with_labels(mut self, labels: Vec<i64>) -> Self {
        debug_assert_eq!(labels.len(), self.adj.len());
        self.labels = labels;
        self
    }
}

/// What ingestion dropped or skipped.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub duplicate_edges: usize,
    pub self_loops: usize,
    pub skipped_lines: usize,
}

/// Parse an edge list: two integer tokens per line, whitespace- or
/// comma-separated, `#`/`%` comments, non-numeric header lines skipped.
///
/// Duplicate edges and self-loops are dropped and counted in the report.
/// Node ids are remapped to `0..N-1` in first-appearance order (this also
/// normalizes 1-indexed inputs); original labels are retained on the graph.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<(Graph, IngestReport)> {
    let mut report = IngestReport::default();
    let mut id_of: HashMap<i64, usize> = HashMap::new();
    let mut labels: Vec<i64> = Vec::new();
    let mut seen = HashSet::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();

    let intern = |label: i64, labels: &mut Vec<i64>, id_of: &mut HashMap<i64, usize>| -> usize {
        *id_of.entry(label).or_insert_with(|| {
            labels.push(label);
            labels.len() - 1
        })
    };

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::Parse {
            line: lineno,
            reason: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let normalized = trimmed.replace(',', " ");
        let tokens: Vec<&str> = normalized.split_whitespace().collect();
        let parsed: Vec<Option<i64>> = tokens.iter().map(|t| t.parse::<i64>().ok()).collect();
        if parsed.first().map_or(true, Option::is_none) {
            // Header or other non-numeric line.
            report.skipped_lines += 1;
            continue;
        }
        if tokens.len() != 2 || parsed.iter().any(Option::is_none) {
            return Err(Error::Parse {
                line: lineno,
                reason: format!("expected two integer tokens, got {:?}", tokens),
            });
        }
        let a = parsed[0].unwrap();
        let b = parsed[1].unwrap();
        let ia = intern(a, &mut labels, &mut id_of);
        let ib = intern(b, &mut labels, &mut id_of);
        if ia == ib {
            report.self_loops += 1;
            continue;
        }
        let e = (ia.min(ib), ia.max(ib));
        if seen.insert(e) {
            edges.push(e);
        } else {
            report.duplicate_edges += 1;
        }
    }

    if edges.is_empty() {
        return Err(Error::EmptyInput);
    }
    let graph = Graph::from_edges(labels.len(), edges)?.with_labels(labels);
    Ok((graph, report))
}

/// Induced subgraph on the largest connected component, ids remapped
/// contiguously in ascending old-id order. Equal-size ties go to the
/// component containing the smallest node id. Returns the old-to-new map
/// alongside.
pub fn largest_connected_component(g: &Graph) -> (Graph, Vec<Option<usize>>) {
    let comps = g.components();
    // components() orders by smallest member, so the first maximum wins ties.
    let best = comps
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| a.len().cmp(&b.len()).then(ib.cmp(ia)))
        .map(|(i, _)| i)
        .expect("graph has at least one node");
    let keep = &comps[best];
    let mut mapping = vec![None; g.node_count()];
    for (new_id, &old_id) in keep.iter().enumerate() {
        mapping[old_id] = Some(new_id);
    }
    let edges = g
        .edges()
        .iter()
        .filter_map(|&(a, b)| Some((mapping[a]?, mapping[b]?)))
        .collect::<Vec<_>>();
    let labels = keep.iter().map(|&old| g.label(old)).collect();
    let sub = Graph::from_edges(keep.len(), edges)
        .expect("induced subgraph of a simple graph is simple")
        .with_labels(labels);
    (sub, mapping)
}

/// One distinct degree value and the (ascending) ids of nodes holding it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeLevel {
    pub degree: usize,
    pub nodes: Vec<usize>,
}

impl DegreeLevel {
    pub fn multiplicity(&self) -> usize {
        self.nodes.len()
    }
}

/// Distinct degrees in strictly increasing order with multiplicities and
/// cumulative counts.
///
/// Levels are indexed `1..=Q` to match the threshold semantics used by the
/// selection strategies: threshold `k` means "all nodes of the `k` smallest
/// distinct degrees", with `k = 0` meaning none. `alpha(k)` is the number of
/// nodes in levels `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHistogram {
    levels: Vec<DegreeLevel>,
    cumulative: Vec<usize>,
    node_count: usize,
}

impl DegreeHistogram {
    /// Group a degree vector (all entries >= 1) into levels.
    pub fn from_degrees(degrees: &[usize]) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::EmptyDegrees);
        }
        if let Some(node) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::ZeroDegree { node });
        }
        let mut by_degree: Vec<(usize, usize)> = degrees.iter().copied().zip(0..).collect();
        by_degree.sort_unstable();
        let mut levels: Vec<DegreeLevel> = Vec::new();
        for (d, node) in by_degree {
            match levels.last_mut() {
                Some(level) if level.degree == d => level.nodes.push(node),
                _ => levels.push(DegreeLevel {
                    degree: d,
                    nodes: vec![node],
                }),
            }
        }
        let mut cumulative = Vec::with_capacity(levels.len());
        let mut total = 0;
        for level in &levels {
            total += level.nodes.len();
            cumulative.push(total);
        }
        Ok(DegreeHistogram {
            levels,
            cumulative,
            node_count: degrees.len(),
        })
    }

    pub fn from_graph(g: &Graph) -> Result<Self> {
        Self::from_degrees(&g.degree_vector())
    }

    /// Number of distinct degree levels, `Q`.
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Cumulative node count of levels `1..=k`; `alpha(0) = 0`.
    pub fn alpha(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.cumulative[k - 1]
        }
    }

    /// Level `k` (1-based).
    pub fn level(&self, k: usize) -> &DegreeLevel {
        &self.levels[k - 1]
    }

    /// Degree value of level `k` (1-based).
    pub fn degree_of(&self, k: usize) -> usize {
        self.levels[k - 1].degree
    }

    pub fn levels(&self) -> &[DegreeLevel] {
        &self.levels
    }

    /// Distinct degrees, ascending.
    pub fn distinct_degrees(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.degree).collect()
    }

    /// The `count` highest-degree nodes drawn strictly from levels above
    /// `above_level`, ties within a level broken by ascending node id.
    ///
    /// Panics if fewer than `count` nodes exist above the level; callers
    /// guarantee feasibility from `alpha`.
    pub fn top_completion(&self, above_level: usize, count: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(count);
        let mut remaining = count;
        for level in self.levels[above_level..].iter().rev() {
            if remaining == 0 {
                break;
            }
            let take = remaining.min(level.nodes.len());
            out.extend_from_slice(&level.nodes[..take]);
            remaining -= take;
        }
        assert_eq!(remaining, 0, "not enough nodes above level {above_level}");
        out
    }

    /// Free-degree levels and pinned degree sum for the threshold set
    /// "levels `1..=k` plus the top `completion` highest-degree nodes".
    ///
    /// Returns `(free_levels, pinned_degree_sum)` with `free_levels` as
    /// ascending `(degree, count)` pairs.
    pub fn threshold_free_levels(&self, k: usize, completion: usize) -> (Vec<(usize, usize)>, u64) {
        let mut pinned_sum: u64 = 0;
        for level in &self.levels[..k] {
            pinned_sum += (level.degree * level.nodes.len()) as u64;
        }
        let mut free: Vec<(usize, usize)> = self.levels[k..]
            .iter()
            .map(|l| (l.degree, l.nodes.len()))
            .collect();
        let mut remaining = completion;
        for slot in free.iter_mut().rev() {
            if remaining == 0 {
                break;
            }
            let take = remaining.min(slot.1);
            slot.1 -= take;
            pinned_sum += (slot.0 * take) as u64;
            remaining -= take;
        }
        assert_eq!(remaining, 0, "completion larger than nodes above level {k}");
        free.retain(|&(_, count)| count > 0);
        (free, pinned_sum)
    }
}

/// A disjoint split of the nodes into pinned set `P` and free set `F`.
///
/// The struct itself is permissive (so invalid splits can be inspected by
/// [`validate_partition`]); selection strategies only ever construct valid
/// ones. `threshold` records the degree-level index below which every node
/// is pinned, when the set came from a threshold strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinningPartition {
    pinned: Vec<usize>,
    node_count: usize,
    threshold: Option<usize>,
}

impl PinningPartition {
    /// Sorts and deduplicates `pinned`; performs no validity checks.
    pub fn new(pinned: impl IntoIterator<Item = usize>, node_count: usize) -> Self {
        let mut pinned: Vec<usize> = pinned.into_iter().collect();
        pinned.sort_unstable();
        pinned.dedup();
        PinningPartition {
            pinned,
            node_count,
            threshold: None,
        }
    }

    pub fn with_threshold(mut self, k: usize) -> Self {
        self.threshold = Some(k);
        self
    }

    /// Pinned node ids, ascending.
    pub fn pinned(&self) -> &[usize] {
        &self.pinned
    }

    /// Free node ids, ascending.
    pub fn free_nodes(&self) -> Vec<usize> {
        let mut free = Vec::with_capacity(self.node_count - self.pinned.len());
        let mut it = self.pinned.iter().peekable();
        for v in 0..self.node_count {
            if it.peek() == Some(&&v) {
                it.next();
            } else {
                free.push(v);
            }
        }
        free
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Pinning budget `c = |P|`.
    pub fn budget(&self) -> usize {
        self.pinned.len()
    }

    pub fn threshold(&self) -> Option<usize> {
        self.threshold
    }

    pub fn is_pinned(&self, node: usize) -> bool {
        self.pinned.binary_search(&node).is_ok()
    }
}

/// Check a partition against a graph; violations come back as data, not
/// errors.
pub fn validate_partition(g: &Graph, p: &PinningPartition) -> Vec<String> {
    let mut violations = Vec::new();
    if p.node_count() != g.node_count() {
        violations.push(format!(
            "partition is over {} nodes but graph has {}",
            p.node_count(),
            g.node_count()
        ));
        return violations;
    }
    if p.pinned().is_empty() {
        violations.push("F must be grounded by nonempty P".to_string());
    }
    if let Some(&max) = p.pinned().last() {
        if max >= g.node_count() {
            violations.push(format!("pinned node {max} out of range"));
        }
    }
    if p.budget() >= g.node_count() {
        violations.push("F empty".to_string());
    }
    if let Some(k) = p.threshold() {
        match DegreeHistogram::from_graph(g) {
            Ok(hist) => violations.extend(check_threshold_structure(&hist, p, k)),
            Err(e) => violations.push(format!("cannot build degree histogram: {e}")),
        }
    }
    violations
}

fn check_threshold_structure(hist: &DegreeHistogram, p: &PinningPartition, k: usize) -> Vec<String> {
    let mut violations = Vec::new();
    if k > hist.level_count() {
        violations.push(format!("threshold {k} exceeds level count {}", hist.level_count()));
        return violations;
    }
    if p.budget() < hist.alpha(k) {
        violations.push(format!(
            "budget {} cannot cover the {} nodes at or below level {k}",
            p.budget(),
            hist.alpha(k)
        ));
        return violations;
    }
    for level in &hist.levels()[..k] {
        for &node in &level.nodes {
            if !p.is_pinned(node) {
                violations.push(format!(
                    "node {node} (degree {}) below threshold level {k} is not pinned",
                    level.degree
                ));
            }
        }
    }
    let completion = p.budget() - hist.alpha(k);
    let mut expected = hist.top_completion(k, completion);
    expected.sort_unstable();
    let actual: Vec<usize> = p
        .pinned()
        .iter()
        .copied()
        .filter(|&n| hist.levels()[..k].iter().all(|l| l.nodes.binary_search(&n).is_err()))
        .collect();
    if actual != expected {
        violations.push(format!(
            "pinned nodes above level {k} are not the canonical highest-degree completion"
        ));
    }
    violations
}
