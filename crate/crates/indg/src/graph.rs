//! Undirected simple graphs with unweighted shortest-path machinery.
//!
//! Nodes are dense `usize` indices. Adjacency lists are kept sorted, so all
//! traversals are deterministic. Unreachability is always a distinct
//! sentinel (`None`), never a large finite distance.

use crate::error::{Error, Result};

/// Default node-count cap for the exact dominating-set solver.
pub const DOMINATING_EXACT_CAP: usize = 30;

/// An undirected simple graph: no self-loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// An edgeless graph on `node_count` nodes.
    pub fn new(node_count: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); node_count],
        }
    }

    pub fn from_edges(
        node_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut g = Graph::new(node_count);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn check_node(&self, v: usize) -> Result<()> {
        if v >= self.adj.len() {
            return Err(Error::invalid(format!(
                "node {v} out of range for graph on {} nodes",
                self.adj.len()
            )));
        }
        Ok(())
    }

    /// Inserts an undirected edge. Returns `false` if it was already
    /// present. Self-loops and out-of-range endpoints are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(Error::invalid(format!("self-loop on node {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos_u) => {
                self.adj[u].insert(pos_u, v);
                let pos_v = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos_v, u);
                Ok(true)
            }
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj
            .get(u)
            .is_some_and(|ns| ns.binary_search(&v).is_ok())
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// All edges as `(u, v)` with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }
}

/// Unweighted shortest-path distances from a single source.
/// `None` means no path exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMap {
    source: usize,
    dist: Vec<Option<u32>>,
}

impl DistanceMap {
    pub fn source(&self) -> usize {
        self.source
    }

    /// Distance to `v`, or `None` if unreachable.
    pub fn get(&self, v: usize) -> Option<u32> {
        self.dist[v]
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Option<u32>)> + '_ {
        self.dist.iter().enumerate().map(|(v, d)| (v, *d))
    }
}

/// BFS distances from `source`.
pub fn bfs_distances(g: &Graph, source: usize) -> Result<DistanceMap> {
    g.check_node(source)?;
    Ok(bfs_with_source_neighbors(g, source, g.neighbors(source)))
}

/// BFS from `source` where the source's outgoing neighbor list is replaced
/// by `source_neighbors`. Edges *into* the source listed by other nodes are
/// irrelevant for distances from it (no shortest path revisits its start),
/// so this computes exact distances in the graph whose edge set at the
/// source is `source_neighbors`. Used to evaluate candidate actions without
/// rebuilding the combined graph.
pub(crate) fn bfs_with_source_neighbors(
    g: &Graph,
    source: usize,
    source_neighbors: &[usize],
) -> DistanceMap {
    let n = g.node_count();
    let mut dist: Vec<Option<u32>> = vec![None; n];
    dist[source] = Some(0);
    let mut queue = std::collections::VecDeque::with_capacity(n);
    for &w in source_neighbors {
        if dist[w].is_none() {
            dist[w] = Some(1);
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].unwrap();
        for &w in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(dv + 1);
                queue.push_back(w);
            }
        }
    }
    DistanceMap { source, dist }
}

/// Maximum finite distance over all node pairs, or `None` if some pair is
/// unreachable (infinite diameter). Requires at least two nodes.
pub fn diameter(g: &Graph) -> Result<Option<u32>> {
    if g.node_count() < 2 {
        return Err(Error::invalid(format!(
            "diameter requires at least 2 nodes, got {}",
            g.node_count()
        )));
    }
    let mut best = 0u32;
    for v in 0..g.node_count() {
        let d = bfs_distances(g, v)?;
        for (_, dw) in d.iter() {
            match dw {
                None => return Ok(None),
                Some(x) => best = best.max(x),
            }
        }
    }
    Ok(Some(best))
}

/// Lowest-index node adjacent to every other node, if one exists.
pub fn find_hub(g: &Graph) -> Option<usize> {
    let n = g.node_count();
    (0..n).find(|&v| g.degree(v) == n - 1)
}

/// How a dominating set should be computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominatingSetMode {
    /// Branch-and-bound minimum dominating set; errors above `cap` nodes.
    Exact { cap: usize },
    /// Max-coverage greedy; the result is only an upper bound.
    Greedy,
}

impl DominatingSetMode {
    pub fn exact() -> Self {
        DominatingSetMode::Exact {
            cap: DOMINATING_EXACT_CAP,
        }
    }
}

/// A dominating set together with whether it is provably minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatingSet {
    pub nodes: Vec<usize>,
    /// True for the exact solver; false flags a greedy upper bound.
    pub exact: bool,
}

/// Computes a dominating set of `g`: every node is either in the set or
/// adjacent to a member. Ties are broken toward lower node indices so the
/// output is deterministic.
pub fn min_dominating_set(g: &Graph, mode: DominatingSetMode) -> Result<DominatingSet> {
    match mode {
        DominatingSetMode::Exact { cap } => {
            // 64 is a hard ceiling from the bitmask representation.
            if g.node_count() > cap.min(64) {
                return Err(Error::capacity(format!(
                    "exact dominating set capped at {} nodes, graph has {}",
                    cap.min(64),
                    g.node_count()
                )));
            }
            Ok(DominatingSet {
                nodes: exact_dominating_set(g),
                exact: true,
            })
        }
        DominatingSetMode::Greedy => Ok(DominatingSet {
            nodes: greedy_dominating_set(g),
            exact: false,
        }),
    }
}

fn closed_neighborhood_mask(g: &Graph, v: usize) -> u64 {
    let mut mask = 1u64 << v;
    for &w in g.neighbors(v) {
        mask |= 1 << w;
    }
    mask
}

fn exact_dominating_set(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    if n == 0 {
        return Vec::new();
    }
    let cover: Vec<u64> = (0..n).map(|v| closed_neighborhood_mask(g, v)).collect();
    let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };

    // Greedy solution seeds the incumbent; branch-and-bound can only shrink it.
    let mut best = greedy_dominating_set(g);
    let mut chosen = Vec::new();
    branch(g, &cover, full, 0, &mut chosen, &mut best);
    best.sort_unstable();
    best
}

fn branch(
    g: &Graph,
    cover: &[u64],
    full: u64,
    dominated: u64,
    chosen: &mut Vec<usize>,
    best: &mut Vec<usize>,
) {
    if dominated == full {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return;
    }
    if chosen.len() + 1 >= best.len() {
        return;
    }
    // Lowest-index undominated node: it or one of its neighbors must join.
    // Candidates explored in ascending index order after the node itself,
    // so equal-size optima resolve deterministically.
    let v = (dominated ^ full).trailing_zeros() as usize;
    for c in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
        chosen.push(c);
        branch(g, cover, full, dominated | cover[c], chosen, best);
        chosen.pop();
    }
}

fn greedy_dominating_set(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut dominated = vec![false; n];
    let mut remaining = n;
    let mut set = Vec::new();
    while remaining > 0 {
        let (mut best_v, mut best_gain) = (0usize, 0usize);
        for v in 0..n {
            let gain = std::iter::once(v)
                .chain(g.neighbors(v).iter().copied())
                .filter(|&w| !dominated[w])
                .count();
            if gain > best_gain {
                best_gain = gain;
                best_v = v;
            }
        }
        set.push(best_v);
        for w in std::iter::once(best_v).chain(g.neighbors(best_v).iter().copied()) {
            if !dominated[w] {
                dominated[w] = true;
                remaining -= 1;
            }
        }
    }
    set.sort_unstable();
    set
}

/// Parses the edge-list text format: first non-comment line `n <count>`,
/// then one `u v` pair per line (0-based). `#` starts a comment; blank
/// lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match &mut graph {
            None => {
                if fields.len() != 2 || fields[0] != "n" {
                    return Err(Error::parse(line_no, "expected header `n <node_count>`"));
                }
                let count: usize = fields[1]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad node count `{}`", fields[1])))?;
                graph = Some(Graph::new(count));
            }
            Some(g) => {
                if fields.len() != 2 {
                    return Err(Error::parse(line_no, format!("expected `u v`, got `{line}`")));
                }
                let u: usize = fields[0]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad node id `{}`", fields[0])))?;
                let v: usize = fields[1]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad node id `{}`", fields[1])))?;
                g.add_edge(u, v)
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
            }
        }
    }
    graph.ok_or_else(|| Error::parse(0, "empty edge-list file"))
}

/// Writes the canonical edge-list form: header then sorted edges, one per
/// line. Parsing the output reproduces the graph bit-exactly.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.node_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => line[..pos].trim(),
        None => line.trim(),
    }
}
