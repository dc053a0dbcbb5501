//! Backtracking search for faithful Pauli realizations inside the m-qubit
//! Pauli group.
//!
//! Vertices are placed one at a time in pattern order. Each new operator must
//! commute with the already placed neighbours, anticommute with every other
//! placed operator, and differ from all of them. Operators are indexed by
//! their packed symplectic vector `x | z << m`, so phases never enter.
//!
//! With `canonicalize` set, symmetry under the symplectic group is used: any
//! two candidates that satisfy the same constraints and both lie outside the
//! span of the placed vectors are related by a symplectic map fixing that
//! span, so only the first of them is tried. Vertex 0 is therefore always
//! `X⊗I…I` and vertex 1 of a cycle is always `I⊗X⊗I…I`.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{cycle_graph, path_graph, Graph};
use crate::pauli::PhasedPauli;
use crate::realization::Realization;

/// Dense commutation tables grow as `16^m`; 6 qubits is 2 MiB per table.
pub const MAX_SEARCH_QUBITS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Cycle(usize),
    Path(usize),
}

impl Target {
    fn graph(self) -> Result<Graph> {
        match self {
            Target::Cycle(n) => cycle_graph(n),
            Target::Path(l) => path_graph(l),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub m: usize,
    pub target: Target,
    pub canonicalize: bool,
    /// Maximum number of search-tree nodes before giving up.
    pub node_budget: u64,
    /// Output is deterministic only with a single thread.
    pub thread_count: usize,
    /// Answer cycles with `n > 3m` as impossible without searching.
    pub apply_cycle_bound: bool,
}

impl SearchConfig {
    pub fn new(m: usize, target: Target) -> SearchConfig {
        SearchConfig {
            m,
            target,
            canonicalize: true,
            node_budget: u64::MAX,
            thread_count: 1,
            apply_cycle_bound: true,
        }
    }

    pub fn cycle(m: usize, n: usize) -> SearchConfig {
        SearchConfig::new(m, Target::Cycle(n))
    }

    pub fn path(m: usize, l: usize) -> SearchConfig {
        SearchConfig::new(m, Target::Path(l))
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.thread_count = threads;
        self
    }

    pub fn with_canonicalize(mut self, on: bool) -> Self {
        self.canonicalize = on;
        self
    }

    pub fn with_cycle_bound(mut self, on: bool) -> Self {
        self.apply_cycle_bound = on;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Realization),
    /// `exhausted` is true for a completed negative answer and false when the
    /// node budget ran out first.
    NotFound {
        exhausted: bool,
    },
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub nodes: u64,
    /// The negative answer came from the `n <= 3m` bound without searching.
    pub by_cycle_bound: bool,
}

impl SearchReport {
    pub fn verdict(&self) -> Verdict {
        match self.outcome {
            SearchOutcome::Found(_) => Verdict::Found,
            SearchOutcome::NotFound { exhausted: true } => Verdict::Impossible,
            SearchOutcome::NotFound { exhausted: false } => Verdict::Budget,
        }
    }

    pub fn realization(&self) -> Option<&Realization> {
        match &self.outcome {
            SearchOutcome::Found(r) => Some(r),
            SearchOutcome::NotFound { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Found,
    Impossible,
    Budget,
}

fn check_qubits(m: usize) -> Result<()> {
    if m == 0 || m > MAX_SEARCH_QUBITS {
        return Err(Error::InvalidArgument(format!(
            "search supports 1..={MAX_SEARCH_QUBITS} qubits, got {m}"
        )));
    }
    Ok(())
}

pub fn find_realization(cfg: &SearchConfig) -> Result<SearchReport> {
    check_qubits(cfg.m)?;
    let size = match cfg.target {
        Target::Cycle(n) => n,
        Target::Path(l) => l,
    };
    let graph = cfg.target.graph()?;
    if cfg.apply_cycle_bound {
        if let Target::Cycle(n) = cfg.target {
            if n > 3 * cfg.m {
                return Ok(SearchReport {
                    outcome: SearchOutcome::NotFound { exhausted: true },
                    nodes: 0,
                    by_cycle_bound: true,
                });
            }
        }
    }
    debug_assert_eq!(graph.n_vertices(), size);
    let tables = Tables::new(cfg.m);
    let pattern = Pattern::new(&graph);
    let (found, nodes, complete) = run(
        &tables,
        &pattern,
        cfg.canonicalize,
        cfg.node_budget,
        cfg.thread_count.max(1),
    );
    let outcome = match found {
        Some(idx) => SearchOutcome::Found(tables.realization(graph, &idx)?),
        None => SearchOutcome::NotFound {
            exhausted: complete,
        },
    };
    Ok(SearchReport {
        outcome,
        nodes,
        by_cycle_bound: false,
    })
}

/// Faithful, injective realization of an arbitrary pattern graph, if one
/// exists within `node_budget` nodes. Vertices are placed in numbering order.
pub fn find_graph_realization(
    graph: &Graph,
    m: usize,
    node_budget: u64,
) -> Result<Option<Realization>> {
    check_qubits(m)?;
    let tables = Tables::new(m);
    let pattern = Pattern::new(graph);
    let (found, _, _) = run(&tables, &pattern, true, node_budget, 1);
    found
        .map(|idx| tables.realization(graph.clone(), &idx))
        .transpose()
}

/// Every faithful realization of `C_n` by unsigned non-identity m-qubit
/// Paulis, one per induced n-cycle of the Pauli compatibility graph.
///
/// Each cycle is listed starting from its smallest operator index, in the
/// direction whose second operator has the smaller index.
pub fn enumerate_cycle_realizations(m: usize, n: usize) -> Result<Vec<Realization>> {
    check_qubits(m)?;
    let graph = cycle_graph(n)?;
    let tables = Tables::new(m);
    let pattern = Pattern::new(&graph);
    let mut out = Vec::new();
    let mut placed = Vec::with_capacity(n);
    for v0 in 1..tables.count {
        placed.push(v0 as u32);
        enumerate_rec(&tables, &pattern, &mut placed, &mut out);
        placed.pop();
    }
    out.into_iter()
        .map(|idx| tables.realization(graph.clone(), &idx))
        .collect()
}

fn enumerate_rec(t: &Tables, pat: &Pattern, placed: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let depth = placed.len();
    if depth == pat.n {
        if placed[1] < placed[depth - 1] {
            out.push(placed.clone());
        }
        return;
    }
    let cand = t.candidates(pat, placed);
    let v0 = placed[0] as usize;
    for c in cand.iter_from(v0 + 1) {
        placed.push(c as u32);
        enumerate_rec(t, pat, placed, out);
        placed.pop();
    }
}

/// Realizability of `C_n` for each `n` in `sizes`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizabilityTable {
    pub m: usize,
    pub entries: BTreeMap<usize, Verdict>,
}

impl RealizabilityTable {
    /// Largest cycle size marked found.
    pub fn max_found(&self) -> Option<usize> {
        self.entries
            .iter()
            .filter(|(_, v)| **v == Verdict::Found)
            .map(|(n, _)| *n)
            .max()
    }
}

pub fn realizability_table(
    m: usize,
    sizes: RangeInclusive<usize>,
    node_budget: u64,
    thread_count: usize,
) -> Result<RealizabilityTable> {
    let mut entries = BTreeMap::new();
    for n in sizes {
        let cfg = SearchConfig::cycle(m, n)
            .with_budget(node_budget)
            .with_threads(thread_count);
        entries.insert(n, find_realization(&cfg)?.verdict());
    }
    Ok(RealizabilityTable { m, entries })
}

#[derive(Clone)]
struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    fn zeros(bits: usize) -> Bitset {
        Bitset {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn and_assign(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    fn iter_from(&self, start: usize) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| {
                let mut w = w;
                std::iter::from_fn(move || {
                    if w == 0 {
                        None
                    } else {
                        let b = w.trailing_zeros() as usize;
                        w &= w - 1;
                        Some(wi * 64 + b)
                    }
                })
            })
            .filter(move |&i| i >= start)
    }
}

/// Commutation rows over all `4^m` operator indices.
struct Tables {
    m: usize,
    count: usize,
    commute: Vec<Bitset>,
    anticommute: Vec<Bitset>,
}

impl Tables {
    fn new(m: usize) -> Tables {
        let count = 1usize << (2 * m);
        let mask = (1u32 << m) - 1;
        let mut commute = vec![Bitset::zeros(count); count];
        let mut anticommute = vec![Bitset::zeros(count); count];
        for a in 0..count {
            let (ax, az) = (a as u32 & mask, (a as u32) >> m);
            for b in 0..count {
                let (bx, bz) = (b as u32 & mask, (b as u32) >> m);
                if ((ax & bz) ^ (az & bx)).count_ones() % 2 == 0 {
                    commute[a].set(b);
                } else {
                    anticommute[a].set(b);
                }
            }
        }
        Tables {
            m,
            count,
            commute,
            anticommute,
        }
    }

    fn pauli(&self, idx: u32) -> PhasedPauli {
        let mask = (1u64 << self.m) - 1;
        PhasedPauli::from_masks(self.m, idx as u64 & mask, idx as u64 >> self.m)
    }

    fn realization(&self, graph: Graph, idx: &[u32]) -> Result<Realization> {
        let paulis = idx.iter().map(|&i| self.pauli(i)).collect();
        let r = Realization::new(self.m, graph, paulis)?;
        debug_assert!(r.is_faithful());
        Ok(r)
    }

    /// Operators that may occupy the next pattern vertex.
    fn candidates(&self, pat: &Pattern, placed: &[u32]) -> Bitset {
        let j = placed.len();
        let mut cand = Bitset {
            words: vec![u64::MAX; self.count.div_ceil(64)],
        };
        for (i, &v) in placed.iter().enumerate() {
            let row = if pat.adjacent(i, j) {
                &self.commute[v as usize]
            } else {
                &self.anticommute[v as usize]
            };
            cand.and_assign(row);
        }
        cand.clear(0);
        for &v in placed {
            cand.clear(v as usize);
        }
        // Mask off padding bits past `count`.
        if !self.count.is_multiple_of(64) {
            let last = cand.words.len() - 1;
            cand.words[last] &= (1u64 << (self.count % 64)) - 1;
        }
        cand
    }
}

struct Pattern {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl Pattern {
    fn new(g: &Graph) -> Pattern {
        let n = g.n_vertices();
        let mut adj = vec![vec![false; n]; n];
        for (a, b) in g.edges() {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        Pattern { n, adj }
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }
}

/// GF(2) echelon basis of packed symplectic vectors, one row per pivot bit.
#[derive(Clone, Default)]
struct Span {
    rows: Vec<u32>,
}

impl Span {
    fn reduce(&self, mut v: u32) -> u32 {
        for &r in &self.rows {
            let pivot = 31 - r.leading_zeros();
            if v >> pivot & 1 == 1 {
                v ^= r;
            }
        }
        v
    }

    fn contains(&self, v: u32) -> bool {
        self.reduce(v) == 0
    }

    fn with(&self, v: u32) -> Span {
        let r = self.reduce(v);
        let mut out = self.clone();
        if r != 0 {
            out.rows.push(r);
            out.rows.sort_unstable_by(|a, b| b.cmp(a));
        }
        out
    }
}

struct Shared {
    nodes: AtomicU64,
    budget: u64,
    stop: AtomicBool,
    over_budget: AtomicBool,
    result: Mutex<Option<Vec<u32>>>,
}

impl Shared {
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.budget {
            self.over_budget.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn publish(&self, placed: &[u32]) {
        let mut slot = self.result.lock().expect("result lock poisoned");
        if slot.is_none() {
            *slot = Some(placed.to_vec());
        }
        self.stop.store(true, Ordering::Relaxed);
    }
}

/// Children of a node, in increasing index order, after symmetry reduction.
fn children(t: &Tables, pat: &Pattern, placed: &[u32], span: &Span, canonical: bool) -> Vec<u32> {
    let cand = t.candidates(pat, placed);
    let mut out = Vec::new();
    let mut took_independent = false;
    for c in cand.iter_from(0) {
        let c = c as u32;
        if canonical && !span.contains(c) {
            if took_independent {
                continue;
            }
            took_independent = true;
        }
        out.push(c);
    }
    out
}

fn dfs(
    t: &Tables,
    pat: &Pattern,
    canonical: bool,
    placed: &mut Vec<u32>,
    span: &Span,
    shared: &Shared,
) {
    if shared.stop.load(Ordering::Relaxed) || !shared.tick() {
        return;
    }
    if placed.len() == pat.n {
        shared.publish(placed);
        return;
    }
    for c in children(t, pat, placed, span, canonical) {
        placed.push(c);
        let next = if canonical {
            span.with(c)
        } else {
            Span::default()
        };
        dfs(t, pat, canonical, placed, &next, shared);
        placed.pop();
        if shared.stop.load(Ordering::Relaxed) {
            return;
        }
    }
}

/// Returns `(found, nodes, complete)`.
fn run(
    t: &Tables,
    pat: &Pattern,
    canonical: bool,
    budget: u64,
    threads: usize,
) -> (Option<Vec<u32>>, u64, bool) {
    let shared = Shared {
        nodes: AtomicU64::new(0),
        budget,
        stop: AtomicBool::new(false),
        over_budget: AtomicBool::new(false),
        result: Mutex::new(None),
    };
    if pat.n == 0 {
        return (Some(Vec::new()), 0, true);
    }
    if threads <= 1 {
        let mut placed = Vec::with_capacity(pat.n);
        dfs(t, pat, canonical, &mut placed, &Span::default(), &shared);
    } else {
        // Expand the top of the tree breadth-first into independent work items.
        let mut frontier: Vec<(Vec<u32>, Span)> = vec![(Vec::new(), Span::default())];
        while frontier.len() < 8 * threads {
            let depth = frontier[0].0.len();
            if depth + 1 >= pat.n {
                break;
            }
            let mut next = Vec::new();
            for (prefix, span) in &frontier {
                if !shared.tick() {
                    break;
                }
                for c in children(t, pat, prefix, span, canonical) {
                    let mut p = prefix.clone();
                    p.push(c);
                    let s = if canonical {
                        span.with(c)
                    } else {
                        Span::default()
                    };
                    next.push((p, s));
                }
            }
            if next.is_empty() || shared.stop.load(Ordering::Relaxed) {
                frontier = next;
                break;
            }
            frontier = next;
        }
        let cursor = AtomicUsize::new(0);
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| loop {
                    let i = cursor.fetch_add(1, Ordering::Relaxed);
                    let Some((prefix, span)) = frontier.get(i) else {
                        break;
                    };
                    if shared.stop.load(Ordering::Relaxed) {
                        break;
                    }
                    let mut placed = prefix.clone();
                    placed.reserve(pat.n);
                    dfs(t, pat, canonical, &mut placed, span, &shared);
                });
            }
        });
    }
    let found = shared.result.into_inner().expect("result lock poisoned");
    let complete = found.is_some() || !shared.over_budget.load(Ordering::Relaxed);
    (found, shared.nodes.load(Ordering::Relaxed), complete)
}
