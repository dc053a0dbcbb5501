//! Compatibility graphs and measurement scenarios.
//!
//! Vertices are `0..n`. A [`Scenario`] pairs a graph with its contexts, the
//! maximal cliques of the graph.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph without self-loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(g: GraphJson) -> Result<Graph> {
        Graph::new(g.n, g.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> GraphJson {
        GraphJson {
            n: g.n,
            edges: g.edges().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl Graph {
    /// Duplicate edges are merged; self-loops and out-of-range endpoints are errors.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut adj = vec![BTreeSet::new(); n];
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Ok(Graph {
            n,
            adj: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, nb)| nb.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Subgraph induced on `vertices`, relabelled to `0..vertices.len()` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut edges = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(vertices.len(), edges).expect("induced subgraph is well formed")
    }

    /// Whether the graph is a single cycle through `0, 1, …, n-1` in order.
    pub fn is_labelled_cycle(&self) -> bool {
        self.n >= 3
            && self.n_edges() == self.n
            && (0..self.n).all(|i| self.has_edge(i, (i + 1) % self.n))
    }

    /// Whether the graph is the path `0 - 1 - … - n-1`.
    pub fn is_labelled_path(&self) -> bool {
        self.n >= 2
            && self.n_edges() == self.n - 1
            && (0..self.n - 1).all(|i| self.has_edge(i, i + 1))
    }

    fn masks(&self) -> Result<Vec<u64>> {
        if self.n > 64 {
            return Err(Error::InvalidArgument(format!(
                "bitmask routines support at most 64 vertices, got {}",
                self.n
            )));
        }
        Ok(self
            .adj
            .iter()
            .map(|nb| nb.iter().fold(0u64, |m, &b| m | (1 << b)))
            .collect())
    }
}

/// The n-cycle `0 - 1 - … - (n-1) - 0`.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// The path on `l` vertices, numbered `0..l` along the path.
pub fn path_graph(l: usize) -> Result<Graph> {
    if l < 2 {
        return Err(Error::InvalidArgument(format!(
            "path needs l >= 2, got {l}"
        )));
    }
    Graph::new(l, (0..l - 1).map(|i| (i, i + 1)))
}

/// Disjoint union of `g1` and `g2` with `identification` pairs `(v1, v2)` merged.
///
/// Vertices of `g1` keep their numbers. The remaining vertices of `g2` follow
/// in increasing order of their `g2` number.
pub fn glue(g1: &Graph, g2: &Graph, identification: &[(usize, usize)]) -> Result<Graph> {
    let mut map: Vec<Option<usize>> = vec![None; g2.n];
    let mut seen_left = BTreeSet::new();
    for &(a, b) in identification {
        if a >= g1.n || b >= g2.n {
            return Err(Error::InvalidArgument(format!(
                "identification ({a}, {b}) out of range"
            )));
        }
        if !seen_left.insert(a) || map[b].is_some() {
            return Err(Error::InvalidArgument(format!(
                "identification is not injective at ({a}, {b})"
            )));
        }
        map[b] = Some(a);
    }
    let mut next = g1.n;
    let map: Vec<usize> = map
        .into_iter()
        .map(|m| {
            m.unwrap_or_else(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    let edges = g1.edges().chain(g2.edges().map(|(a, b)| (map[a], map[b])));
    Graph::new(next, edges)
}

/// Two 5-cycles sharing `shared` consecutive vertices (1, 2 or 3), i.e. a
/// node, an edge, or two edges.
///
/// The first cycle is `0-1-2-3-4-0`. The second runs through the shared
/// vertices `0, 4, 3` (as many as requested) and closes with fresh vertices.
/// With `shared = 3` the graph has edges `{0,1},{1,2},{2,3},{3,4},{0,4},
/// {3,5},{5,6},{0,6}`.
pub fn conjoined_five_cycles(shared: usize) -> Result<Graph> {
    if !(1..=3).contains(&shared) {
        return Err(Error::InvalidArgument(format!(
            "two 5-cycles can share 1..=3 consecutive vertices, got {shared}"
        )));
    }
    let c5 = cycle_graph(5)?;
    let ident = [(0, 0), (4, 1), (3, 2)];
    glue(&c5, &c5, &ident[..shared])
}

/// Maximum cardinality search order; its reverse is a perfect elimination
/// ordering exactly when the graph is chordal.
fn maximum_cardinality_order(g: &Graph) -> Vec<usize> {
    let n = g.n;
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !numbered[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unnumbered vertex remains");
        numbered[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !numbered[u] {
                weight[u] += 1;
            }
        }
    }
    order
}

/// A perfect elimination ordering if one exists.
pub fn perfect_elimination_ordering(g: &Graph) -> Option<Vec<usize>> {
    let mut peo = maximum_cardinality_order(g);
    peo.reverse();
    let mut pos = vec![0; g.n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    for &v in &peo {
        let later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| pos[u] > pos[v])
            .collect();
        // Later neighbours must form a clique.
        if let Some(&parent) = later.iter().min_by_key(|&&u| pos[u]) {
            if later.iter().any(|&u| u != parent && !g.has_edge(parent, u)) {
                return None;
            }
        }
    }
    Some(peo)
}

pub fn is_chordal(g: &Graph) -> bool {
    perfect_elimination_ordering(g).is_some()
}

/// All chordless cycles with `4 ..= max_len` vertices, each reported once.
///
/// A cycle is listed starting from its smallest vertex, in the direction whose
/// second vertex is smaller than its last.
pub fn induced_cycles(g: &Graph, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if max_len < 4 {
        return out;
    }
    let mut path = Vec::with_capacity(max_len);
    for s in 0..g.n {
        path.clear();
        path.push(s);
        for &v1 in g.neighbors(s) {
            if v1 > s {
                path.push(v1);
                extend_chordless(g, max_len, &mut path, &mut out);
                path.pop();
            }
        }
    }
    out.sort();
    out
}

fn extend_chordless(g: &Graph, max_len: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let s = path[0];
    let last = *path.last().unwrap();
    let k = path.len();
    for &v in g.neighbors(last) {
        if v <= s || path.contains(&v) {
            continue;
        }
        // No chord back to the interior of the path.
        if path[1..k - 1].iter().any(|&u| g.has_edge(u, v)) {
            continue;
        }
        if g.has_edge(s, v) {
            // Closing a triangle is never chordless with length >= 4.
            if k >= 3 && path[1] < v {
                let mut cyc = path.clone();
                cyc.push(v);
                out.push(cyc);
            }
            continue;
        }
        if k + 1 < max_len {
            path.push(v);
            extend_chordless(g, max_len, path, out);
            path.pop();
        }
    }
}

/// All maximal cliques, each sorted, in lexicographic order. Isolated
/// vertices form singleton cliques.
pub fn maximal_cliques(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let adj = g.masks()?;
    let all = if g.n == 64 {
        u64::MAX
    } else {
        (1u64 << g.n) - 1
    };
    let mut out = Vec::new();
    bron_kerbosch(&adj, 0, all, 0, &mut out);
    let mut cliques: Vec<Vec<usize>> = out
        .into_iter()
        .map(|mask| (0..g.n).filter(|&v| mask >> v & 1 == 1).collect())
        .collect();
    cliques.sort();
    Ok(cliques)
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = {
        let px = p | x;
        (0..adj.len())
            .filter(|&u| px >> u & 1 == 1)
            .max_by_key(|&u| (adj[u] & p).count_ones())
            .unwrap()
    };
    let mut candidates = p & !adj[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        bron_kerbosch(adj, r | (1 << v), p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// A compatibility graph together with its contexts (maximal cliques).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ScenarioJson")]
pub struct Scenario {
    graph: Graph,
    contexts: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct ScenarioJson {
    graph: Graph,
    contexts: Option<Vec<Vec<usize>>>,
}

impl TryFrom<ScenarioJson> for Scenario {
    type Error = Error;

    /// Contexts may be omitted; when given they must be the maximal cliques.
    fn try_from(s: ScenarioJson) -> Result<Scenario> {
        let sc = Scenario::new(s.graph)?;
        if let Some(contexts) = s.contexts {
            let normalize = |mut cs: Vec<Vec<usize>>| {
                cs.iter_mut().for_each(|c| c.sort_unstable());
                cs.sort();
                cs
            };
            if normalize(contexts) != normalize(sc.contexts.clone()) {
                return Err(Error::InvalidGraph(
                    "contexts are not the maximal cliques of the graph".into(),
                ));
            }
        }
        Ok(sc)
    }
}

impl Scenario {
    pub fn new(graph: Graph) -> Result<Scenario> {
        let contexts = maximal_cliques(&graph)?;
        Ok(Scenario { graph, contexts })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn contexts(&self) -> &[Vec<usize>] {
        &self.contexts
    }

    pub fn n_vertices(&self) -> usize {
        self.graph.n
    }

    /// Checks that the contexts are exactly the maximal cliques of the graph.
    pub fn validate(&self) -> Result<()> {
        if maximal_cliques(&self.graph)? != self.contexts {
            return Err(Error::InvalidGraph(
                "contexts are not the maximal cliques of the graph".into(),
            ));
        }
        Ok(())
    }
}
