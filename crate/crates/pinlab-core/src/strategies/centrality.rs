//! Centrality-score baselines: rank every node once, then pin the top `c`
//! for each budget.
//!
//! Four measures are provided: degree, shortest-path betweenness, k-shell
//! coreness, and cycle ratio (how often a node sits on the shortest cycles
//! of others). All rankings break ties toward the smaller node id so the
//! produced sets are reproducible across runs and thread counts.

use std::collections::{HashSet, VecDeque};

use crate::graph::{Graph, PinningPartition};
use crate::par;
use crate::spectral::{evaluate, EvalBackend};
use crate::strategies::{BudgetRecord, Strategy, StrategyOutput};
use crate::{Error, Result};

/// Hard size limit for the cycle-ratio measure, whose shortest-cycle
/// enumeration is the one super-linear kernel in this module.
pub const CYCLE_RATIO_CAP: usize = 10_000;

/// Sources per parallel work unit in the betweenness and cycle-ratio
/// accumulations. Fixed so partial sums combine identically at any thread
/// count.
const SOURCE_CHUNK: usize = 64;

/// A full node ordering under one centrality measure.
#[derive(Debug, Clone)]
pub struct CentralityRanking {
    /// Which measure produced the scores.
    pub measure: Strategy,
    /// Raw score per node id.
    pub scores: Vec<f64>,
    /// Node ids sorted by descending score, ties by ascending id.
    pub order: Vec<usize>,
}

fn ranking_from(measure: Strategy, scores: Vec<f64>) -> CentralityRanking {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap().then(a.cmp(&b)));
    CentralityRanking { measure, scores, order }
}

/// Degree centrality: the score of a node is its degree.
pub fn rank_degree(g: &Graph) -> CentralityRanking {
    let scores = g.degree_vector().into_iter().map(|d| d as f64).collect();
    ranking_from(Strategy::Degree, scores)
}

/// Shortest-path betweenness via Brandes' dependency accumulation,
/// endpoints excluded, each unordered pair counted once.
pub fn rank_betweenness(g: &Graph) -> CentralityRanking {
    let n = g.node_count();
    let chunks = n.div_ceil(SOURCE_CHUNK);
    let partials: Vec<Vec<f64>> = par::map_range(chunks, |ci| {
        let lo = ci * SOURCE_CHUNK;
        let hi = ((ci + 1) * SOURCE_CHUNK).min(n);
        let mut score = vec![0.0f64; n];
        let mut sigma = vec![0.0f64; n];
        let mut dist = vec![usize::MAX; n];
        let mut delta = vec![0.0f64; n];
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        for s in lo..hi {
            sigma.fill(0.0);
            delta.fill(0.0);
            dist.fill(usize::MAX);
            for p in preds.iter_mut() {
                p.clear();
            }
            order.clear();
            sigma[s] = 1.0;
            dist[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &w in g.neighbors(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                    if dist[w] == dist[v] + 1 {
                        sigma[w] += sigma[v];
                        preds[w].push(v);
                    }
                }
            }
            for &v in order.iter().rev() {
                for &u in &preds[v] {
                    delta[u] += sigma[u] / sigma[v] * (1.0 + delta[v]);
                }
                if v != s {
                    score[v] += delta[v];
                }
            }
        }
        score
    });
    let mut total = vec![0.0f64; n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    // Each unordered pair was accumulated from both endpoints.
    for t in &mut total {
        *t *= 0.5;
    }
    ranking_from(Strategy::Betweenness, total)
}

/// k-shell coreness by repeated removal of minimum-degree nodes, using the
/// linear-time bucket ordering of Batagelj and Zaveršnik.
pub fn rank_coreness(g: &Graph) -> CentralityRanking {
    let n = g.node_count();
    let mut core = g.degree_vector();
    let maxd = core.iter().copied().max().unwrap_or(0);
    let mut bin = vec![0usize; maxd + 2];
    for &d in &core {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let width = *b;
        *b = start;
        start += width;
    }
    let mut vert = vec![0usize; n];
    let mut pos = vec![0usize; n];
    for v in 0..n {
        vert[bin[core[v]]] = v;
        pos[v] = bin[core[v]];
        bin[core[v]] += 1;
    }
    for d in (1..=maxd + 1).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;
    for i in 0..n {
        let v = vert[i];
        for &u in g.neighbors(v) {
            if core[u] > core[v] {
                let du = core[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw];
                if u != w {
                    vert[pu] = w;
                    pos[w] = pu;
                    vert[pw] = u;
                    pos[u] = pw;
                }
                bin[du] += 1;
                core[u] -= 1;
            }
        }
    }
    ranking_from(Strategy::Coreness, core.into_iter().map(|c| c as f64).collect())
}

/// Undirected bridges via an iterative lowlink depth-first search.
fn bridge_edges(g: &Graph) -> HashSet<(usize, usize)> {
    let n = g.node_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0usize;
    let mut bridges = HashSet::new();
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(frame) = stack.last_mut() {
            let (v, parent) = (frame.0, frame.1);
            let neigh = g.neighbors(v);
            if frame.2 < neigh.len() {
                let w = neigh[frame.2];
                frame.2 += 1;
                if w == parent {
                    // A simple graph has exactly one edge back to the parent.
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(pframe) = stack.last_mut() {
                    let u = pframe.0;
                    low[u] = low[u].min(low[v]);
                    if low[v] > disc[u] {
                        bridges.insert((u.min(v), u.max(v)));
                    }
                }
            }
        }
    }
    bridges
}

fn bfs_distances(g: &Graph, source: usize, dist: &mut [usize], queue: &mut VecDeque<usize>) {
    dist.fill(usize::MAX);
    dist[source] = 0;
    queue.clear();
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
}

/// Count the simple cycles of length exactly `l` through `j`, adding one to
/// `counts[v]` for every node of every such cycle. Each undirected cycle is
/// counted once (traversals starting at the smaller of j's two cycle
/// neighbors). Returns the number of cycles found.
fn count_cycles_of_length(
    g: &Graph,
    j: usize,
    l: usize,
    dist: &[usize],
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    frames: &mut Vec<usize>,
    counts: &mut [u64],
) -> u64 {
    let mut found = 0u64;
    path.clear();
    frames.clear();
    path.push(j);
    frames.push(0);
    on_path[j] = true;
    while let Some(next) = frames.last_mut() {
        let depth = path.len() - 1;
        let v = *path.last().unwrap();
        if depth == l - 1 {
            if path[1] < v && g.has_edge(v, j) {
                found += 1;
                for &u in path.iter() {
                    counts[u] += 1;
                }
            }
            frames.pop();
            on_path[v] = false;
            path.pop();
            continue;
        }
        let neigh = g.neighbors(v);
        let mut advanced = false;
        while *next < neigh.len() {
            let w = neigh[*next];
            *next += 1;
            // The closing hop is back to j, so w must still be able to reach
            // j in the l − depth − 2 edges that remain after stepping to it.
            if on_path[w] || dist[w] + depth + 1 > l {
                continue;
            }
            path.push(w);
            frames.push(0);
            on_path[w] = true;
            advanced = true;
            break;
        }
        if !advanced {
            frames.pop();
            on_path[v] = false;
            path.pop();
        }
    }
    found
}

/// Cycle-ratio centrality: `r_i = Σ_j c_ij / c_jj`, where `c_jj` counts the
/// shortest cycles through `j` and `c_ij` those also passing through `i`.
/// Nodes on no cycle contribute nothing and score zero.
pub fn rank_cycle_ratio(g: &Graph) -> Result<CentralityRanking> {
    let n = g.node_count();
    if n > CYCLE_RATIO_CAP {
        return Err(Error::CycleRatioCapExceeded {
            nodes: n,
            cap: CYCLE_RATIO_CAP,
        });
    }
    let bridges = bridge_edges(g);
    let mut on_cycle = vec![false; n];
    for &(u, v) in g.edges() {
        if !bridges.contains(&(u, v)) {
            on_cycle[u] = true;
            on_cycle[v] = true;
        }
    }
    let chunks = n.div_ceil(SOURCE_CHUNK);
    let partials: Vec<Vec<f64>> = par::map_range(chunks, |ci| {
        let lo = ci * SOURCE_CHUNK;
        let hi = ((ci + 1) * SOURCE_CHUNK).min(n);
        let mut ratio = vec![0.0f64; n];
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        let mut on_path = vec![false; n];
        let mut path = Vec::new();
        let mut frames = Vec::new();
        let mut counts = vec![0u64; n];
        for j in lo..hi {
            if !on_cycle[j] {
                continue;
            }
            bfs_distances(g, j, &mut dist, &mut queue);
            // Every edge avoiding j closes a walk of dist[u] + dist[v] + 1
            // edges through j; the minimum bounds the girth at j from below.
            let mut lower = usize::MAX;
            for &(u, v) in g.edges() {
                if u != j && v != j && dist[u] != usize::MAX && dist[v] != usize::MAX {
                    lower = lower.min(dist[u] + dist[v] + 1);
                }
            }
            counts.fill(0);
            let mut l = lower;
            let cycles = loop {
                assert!(l <= n, "girth search exceeded the node count");
                let found =
                    count_cycles_of_length(g, j, l, &dist, &mut on_path, &mut path, &mut frames, &mut counts);
                if found > 0 {
                    break found;
                }
                l += 1;
            };
            let denom = cycles as f64;
            for (r, &c) in ratio.iter_mut().zip(counts.iter()) {
                if c > 0 {
                    *r += c as f64 / denom;
                }
            }
        }
        ratio
    });
    let mut total = vec![0.0f64; n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    Ok(ranking_from(Strategy::CycleRatio, total))
}

/// The pinning set holding the `c` best-ranked nodes.
pub fn top_k_set(ranking: &CentralityRanking, c: usize) -> Result<PinningPartition> {
    let n = ranking.order.len();
    if c < 1 || c >= n {
        return Err(Error::BadBudget { budget: c, nodes: n });
    }
    Ok(PinningPartition::new(ranking.order[..c].iter().copied(), n))
}

/// Evaluate the ranking's nested top-`c` sets for every budget `1..=c_max`.
pub fn top_k_curve(
    g: &Graph,
    ranking: &CentralityRanking,
    c_max: usize,
    backend: EvalBackend,
) -> Result<StrategyOutput> {
    let n = g.node_count();
    if c_max < 1 || c_max >= n {
        return Err(Error::BadBudget { budget: c_max, nodes: n });
    }
    let records: Vec<Result<BudgetRecord>> = par::map_range(c_max, |i| {
        let c = i + 1;
        let partition = top_k_set(ranking, c)?;
        let selection = evaluate(g, &partition, backend).map_err(|e| e.at_budget(c))?;
        Ok(BudgetRecord {
            c,
            partition,
            selection,
            k_star: None,
        })
    });
    let records = records.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(StrategyOutput {
        strategy: ranking.measure,
        records,
    })
}
