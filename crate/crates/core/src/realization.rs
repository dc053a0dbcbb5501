//! Faithful Pauli realizations of graphs.
//!
//! A realization assigns a Hermitian m-qubit Pauli to every vertex. It is
//! faithful when two assigned operators commute exactly when their vertices
//! are equal or adjacent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{cycle_graph, path_graph, Graph};
use crate::pauli::{independent, PhasedPauli};

/// Vertex-to-Pauli assignment on a fixed graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RealizationJson", into = "RealizationJson")]
pub struct Realization {
    m: usize,
    graph: Graph,
    paulis: Vec<PhasedPauli>,
}

#[derive(Serialize, Deserialize)]
struct RealizationJson {
    m: usize,
    graph: Graph,
    paulis: Vec<PhasedPauli>,
}

impl TryFrom<RealizationJson> for Realization {
    type Error = Error;

    fn try_from(r: RealizationJson) -> Result<Realization> {
        Realization::new(r.m, r.graph, r.paulis)
    }
}

impl From<Realization> for RealizationJson {
    fn from(r: Realization) -> RealizationJson {
        RealizationJson {
            m: r.m,
            graph: r.graph,
            paulis: r.paulis,
        }
    }
}

/// One offending vertex pair in a faithfulness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairViolation {
    pub a: usize,
    pub b: usize,
    pub expected_commute: bool,
    pub actual_commute: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaithfulReport {
    pub faithful: bool,
    pub violations: Vec<PairViolation>,
}

/// Exhaustive pairwise faithfulness check of `paulis` against `g`.
pub fn verify_faithful(g: &Graph, paulis: &[PhasedPauli]) -> Result<FaithfulReport> {
    if paulis.len() != g.n_vertices() {
        return Err(Error::InvalidArgument(format!(
            "{} operators assigned to a graph with {} vertices",
            paulis.len(),
            g.n_vertices()
        )));
    }
    let mut violations = Vec::new();
    for a in 0..paulis.len() {
        for b in a + 1..paulis.len() {
            let expected_commute = g.has_edge(a, b);
            let actual_commute = paulis[a].commutes(&paulis[b])?;
            if expected_commute != actual_commute {
                violations.push(PairViolation {
                    a,
                    b,
                    expected_commute,
                    actual_commute,
                });
            }
        }
    }
    let faithful = violations.is_empty();
    if faithful && g.n_vertices() >= 4 && g.is_labelled_cycle() {
        for a in 0..paulis.len() {
            for b in a + 1..paulis.len() {
                assert!(
                    !paulis[a].same_letters(&paulis[b]),
                    "faithful cycle realization is not injective at ({a}, {b})"
                );
            }
        }
    }
    Ok(FaithfulReport {
        faithful,
        violations,
    })
}

impl Realization {
    /// Every operator must be Hermitian and act on `m` qubits.
    pub fn new(m: usize, graph: Graph, paulis: Vec<PhasedPauli>) -> Result<Realization> {
        if paulis.len() != graph.n_vertices() {
            return Err(Error::InvalidArgument(format!(
                "{} operators for {} vertices",
                paulis.len(),
                graph.n_vertices()
            )));
        }
        for (v, p) in paulis.iter().enumerate() {
            if p.qubits() != m {
                return Err(Error::QubitMismatch(m, p.qubits()));
            }
            if !p.is_hermitian() {
                return Err(Error::InvalidArgument(format!(
                    "operator {p} at vertex {v} is not Hermitian"
                )));
            }
        }
        Ok(Realization { m, graph, paulis })
    }

    /// Parses operator strings; all must have the same length.
    pub fn from_strs(graph: Graph, ops: &[&str]) -> Result<Realization> {
        let paulis = ops
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<PhasedPauli>>>()?;
        let m = paulis.first().map_or(0, PhasedPauli::qubits);
        Realization::new(m, graph, paulis)
    }

    pub fn cycle_from_strs(ops: &[&str]) -> Result<Realization> {
        Realization::from_strs(cycle_graph(ops.len())?, ops)
    }

    pub fn path_from_strs(ops: &[&str]) -> Result<Realization> {
        Realization::from_strs(path_graph(ops.len())?, ops)
    }

    pub fn qubits(&self) -> usize {
        self.m
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn paulis(&self) -> &[PhasedPauli] {
        &self.paulis
    }

    pub fn len(&self) -> usize {
        self.paulis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paulis.is_empty()
    }

    pub fn verify_faithful(&self) -> Result<FaithfulReport> {
        verify_faithful(&self.graph, &self.paulis)
    }

    pub fn is_faithful(&self) -> bool {
        self.verify_faithful().map(|r| r.faithful).unwrap_or(false)
    }

    pub fn require_faithful(&self) -> Result<()> {
        let report = self.verify_faithful()?;
        if let Some(v) = report.violations.first() {
            return Err(Error::NotFaithful(format!(
                "vertices {} and {} should {} but {} ({} violations)",
                v.a,
                v.b,
                if v.expected_commute {
                    "commute"
                } else {
                    "anticommute"
                },
                if v.actual_commute {
                    "commute"
                } else {
                    "anticommute"
                },
                report.violations.len()
            )));
        }
        Ok(())
    }

    fn require_cycle(&self) -> Result<usize> {
        if !self.graph.is_labelled_cycle() {
            return Err(Error::InvalidArgument(
                "operation needs a realization of a cycle 0-1-…-(n-1)-0".into(),
            ));
        }
        Ok(self.paulis.len())
    }

    fn require_path(&self) -> Result<usize> {
        if !self.graph.is_labelled_path() {
            return Err(Error::InvalidArgument(
                "operation needs a realization of a path 0-1-…-(l-1)".into(),
            ));
        }
        Ok(self.paulis.len())
    }

    /// Edge Paulis `L_i = P_i · P_{i+1 mod n}` of a cycle realization.
    pub fn edge_paulis(&self) -> Result<EdgePauliSet> {
        let n = self.require_cycle()?;
        let operators = (0..n)
            .map(|i| self.paulis[i].multiply(&self.paulis[(i + 1) % n]))
            .collect::<Result<Vec<_>>>()?;
        Ok(EdgePauliSet { operators })
    }

    /// Runs the forbidden-form and commutativity conditions on the edge
    /// Paulis of a faithful cycle realization with `n >= 4`.
    pub fn check_edge_constraints(&self) -> Result<EdgeConstraintReport> {
        let n = self.require_cycle()?;
        if n < 4 {
            return Err(Error::InvalidArgument(format!(
                "edge constraints need n >= 4, got {n}"
            )));
        }
        self.require_faithful()?;
        let edges = self.edge_paulis()?;
        let l = &edges.operators;
        let fail = |msg: String| Err(Error::Constraint(msg));

        for (i, li) in l.iter().enumerate() {
            if !li.is_hermitian() {
                return fail(format!("L{i} = {li} is not Hermitian"));
            }
            if li.is_identity_letters() {
                return fail(format!("L{i} is a multiple of the identity"));
            }
            for (k, pk) in self.paulis.iter().enumerate() {
                if li.same_letters(pk) {
                    return fail(format!("L{i} = {li} is a multiple of P{k} = {pk}"));
                }
            }
        }

        let mut commuting_pairs = 0;
        for i in 0..n {
            for j in i + 1..n {
                let d = cyclic_distance(i, j, n);
                let actual = l[i].commutes_unchecked(&l[j]);
                if actual {
                    commuting_pairs += 1;
                }
                let expected = match (n, d) {
                    (_, 1) => false,
                    (4, 2) => true,
                    (_, 2) => false,
                    _ => true,
                };
                if actual != expected {
                    return fail(format!(
                        "L{i} and L{j} (distance {d}) should {}",
                        if expected { "commute" } else { "anticommute" }
                    ));
                }
            }
        }

        for (i, li) in l.iter().enumerate() {
            for (k, pk) in self.paulis.iter().enumerate() {
                let expected = k != (i + n - 1) % n && k != (i + 2) % n;
                if li.commutes_unchecked(pk) != expected {
                    return fail(format!(
                        "L{i} and P{k} should {}",
                        if expected { "commute" } else { "anticommute" }
                    ));
                }
            }
        }

        Ok(EdgeConstraintReport {
            n,
            commuting_edge_pairs: commuting_pairs,
        })
    }

    /// Tensors every operator with a single-qubit identity.
    pub fn append_qubit(&self) -> Realization {
        let id = PhasedPauli::identity(1);
        Realization {
            m: self.m + 1,
            graph: self.graph.clone(),
            paulis: self.paulis.iter().map(|p| p.embed(&id)).collect(),
        }
    }
}

/// `min(|i-j|, n-|i-j|)`.
pub fn cyclic_distance(i: usize, j: usize, n: usize) -> usize {
    let d = i.abs_diff(j) % n;
    d.min(n - d)
}

/// Products of neighbouring cycle Paulis, in cycle order, phases kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePauliSet {
    pub operators: Vec<PhasedPauli>,
}

impl EdgePauliSet {
    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn get(&self, i: usize) -> &PhasedPauli {
        &self.operators[i]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeConstraintReport {
    pub n: usize,
    /// Unordered pairs of distinct edge Paulis that commute.
    pub commuting_edge_pairs: usize,
}

fn x_run(m: usize, row: usize, final_row: bool) -> String {
    // Z on qubits 0..row-1, I at row-1, X at row; qubit 0 forced to I on the final row.
    let mut s = vec!['I'; m];
    for c in s.iter_mut().take(row.saturating_sub(1)) {
        *c = 'Z';
    }
    s[row] = 'X';
    if final_row {
        s[0] = 'I';
    }
    s.into_iter().collect()
}

/// Baseline m-cycle on m qubits: an X marching right over a growing Z
/// prefix, the last row dropping its leading Z.
pub fn construct_acc(m: usize) -> Result<Realization> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!(
            "baseline construction needs m >= 3, got {m}"
        )));
    }
    let rows: Vec<String> = (0..m).map(|r| x_run(m, r, r == m - 1)).collect();
    let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
    Realization::cycle_from_strs(&refs)
}

/// (m+2)-cycle on m qubits. Rows `0..m` carry the marching X over a Z
/// prefix, followed by `Z…ZI` and `IZ…Z`.
pub fn construct_c2(m: usize) -> Result<Realization> {
    if m < 1 {
        return Err(Error::InvalidArgument("construction needs m >= 1".into()));
    }
    let mut rows: Vec<String> = (0..m).map(|r| x_run(m, r, false)).collect();
    let mut tail1 = vec!['Z'; m];
    tail1[m - 1] = 'I';
    let mut tail2 = vec!['Z'; m];
    tail2[0] = 'I';
    rows.push(tail1.into_iter().collect());
    rows.push(tail2.into_iter().collect());
    let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
    Realization::cycle_from_strs(&refs)
}

/// Closes a faithful path realization into a cycle on one extra qubit: the
/// first operator gains `X`, the last gains `Y`, the rest gain `I`.
pub fn path_to_cycle(r: &Realization) -> Result<Realization> {
    let l = r.require_path()?;
    if l < 3 {
        return Err(Error::InvalidArgument(format!(
            "path must have at least 3 vertices, got {l}"
        )));
    }
    let x: PhasedPauli = "X".parse()?;
    let y: PhasedPauli = "Y".parse()?;
    let i = PhasedPauli::identity(1);
    let paulis = r
        .paulis
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let extra = if k == 0 {
                &x
            } else if k == l - 1 {
                &y
            } else {
                &i
            };
            p.embed(extra)
        })
        .collect();
    Realization::new(r.m + 1, cycle_graph(l)?, paulis)
}

/// Concatenates path realizations `H_l` (m qubits) and `H_l'` (m' qubits)
/// into `H_{l+l'-2}` on `m+m'` qubits.
pub fn concat_paths(r1: &Realization, r2: &Realization) -> Result<Realization> {
    let l = r1.require_path()?;
    let l2 = r2.require_path()?;
    let pad = PhasedPauli::identity(r2.m);
    let p = &r1.paulis;
    let q = &r2.paulis;
    let mut out: Vec<PhasedPauli> = p[..l - 2].iter().map(|pi| pi.embed(&pad)).collect();
    out.push(p[l - 2].embed(&q[0]));
    out.push(p[l - 1].embed(&q[1]));
    out.extend(q[2..].iter().map(|qj| p[l - 1].embed(qj)));
    debug_assert_eq!(out.len(), l + l2 - 2);
    Realization::new(r1.m + r2.m, path_graph(l + l2 - 2)?, out)
}

/// The single-qubit path `X - I - Y`.
pub fn h3_path() -> Realization {
    Realization::path_from_strs(&["X", "I", "Y"]).expect("fixed H3 path is valid")
}

/// 3-qubit faithful realization of the 8-vertex path, found by the
/// backtracking search (`Target::Path(8)`, 3 qubits, canonical order).
pub const H8_SEED: [&str; 8] = ["XII", "IXI", "ZII", "ZZI", "YYX", "YZZ", "YZI", "YZX"];

/// 2-qubit faithful realization of the 5-vertex path, found by the same search.
pub const H5_SEED: [&str; 5] = ["XI", "IX", "ZI", "ZZ", "YY"];

pub fn h8_seed() -> Realization {
    Realization::path_from_strs(&H8_SEED).expect("frozen H8 seed is valid")
}

pub fn h5_seed() -> Realization {
    Realization::path_from_strs(&H5_SEED).expect("frozen H5 seed is valid")
}

/// Faithful path on `m >= 3` qubits with `2m + 2` vertices (`m ≡ 0 mod 3`)
/// or `2m + 1` vertices (otherwise).
///
/// Starts from `p` rounds of concatenating the H8 seed with itself (a path
/// `H_{8+6p}` on `3+3p` qubits). The `m ≡ 1` branch then appends
/// `X - I - Y`; the `m ≡ 2` branch appends the 2-qubit H5 seed.
pub fn big_path(m: usize) -> Result<Realization> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!(
            "concatenated path needs m >= 3, got {m}"
        )));
    }
    let (rounds, tail) = match m % 3 {
        0 => ((m - 3) / 3, None),
        1 => ((m - 4) / 3, Some(h3_path())),
        _ => ((m - 5) / 3, Some(h5_seed())),
    };
    let seed = h8_seed();
    let mut path = seed.clone();
    for _ in 0..rounds {
        path = concat_paths(&path, &seed)?;
    }
    if let Some(tail) = tail {
        path = concat_paths(&path, &tail)?;
    }
    debug_assert_eq!(path.qubits(), m);
    Ok(path)
}

/// Faithful cycle of size `2m` (`m ≡ 1 mod 3`) or `2m - 1` (otherwise) on
/// `m >= 4` qubits: [`big_path`]`(m - 1)` closed with [`path_to_cycle`].
pub fn big_cycle(m: usize) -> Result<Realization> {
    if m < 4 {
        return Err(Error::InvalidArgument(format!(
            "big cycle construction needs m >= 4, got {m}"
        )));
    }
    path_to_cycle(&big_path(m - 1)?)
}

/// Expected size of [`big_cycle`] on `m` qubits.
pub fn big_cycle_size(m: usize) -> usize {
    if m % 3 == 1 {
        2 * m
    } else {
        2 * m - 1
    }
}

/// Pairwise-commuting independent set `{P_0} ∪ {L_{3j} : j = 0..⌈n/3⌉-2}`
/// of a faithful n-cycle realization, `n >= 3`. Its size `⌈n/3⌉` can never
/// exceed m.
pub fn impossibility_witness(r: &Realization) -> Result<Vec<PhasedPauli>> {
    let n = r.require_cycle()?;
    r.require_faithful()?;
    let edges = r.edge_paulis()?;
    let c = n.div_ceil(3);
    let mut set = vec![r.paulis[0].clone()];
    set.extend((0..c - 1).map(|j| edges.operators[3 * j].clone()));
    for a in 0..set.len() {
        for b in a + 1..set.len() {
            if !set[a].commutes_unchecked(&set[b]) {
                return Err(Error::Constraint(format!(
                    "witness elements {} and {} anticommute",
                    set[a], set[b]
                )));
            }
        }
    }
    if !independent(&set)? {
        return Err(Error::Constraint("witness set is dependent".into()));
    }
    debug_assert!(set.len() <= r.m);
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_cycle_faithful() {
        let r = Realization::cycle_from_strs(&["XI", "IX", "ZI", "IZ"]).unwrap();
        assert!(r.verify_faithful().unwrap().faithful);
        let bad = Realization::cycle_from_strs(&["XI", "IX", "XI", "IZ"]).unwrap();
        let report = bad.verify_faithful().unwrap();
        assert!(!report.faithful);
        assert!(report
            .violations
            .iter()
            .any(|v| (v.a, v.b) == (0, 2) && v.actual_commute && !v.expected_commute));
        assert!(h3_path().is_faithful());
        assert!(verify_faithful(&cycle_graph(4).unwrap(), &r.paulis[..3]).is_err());
    }

    #[test]
    fn hermitian_required() {
        let g = path_graph(2).unwrap();
        let ps = vec!["X".parse().unwrap(), "iZ".parse().unwrap()];
        assert!(Realization::new(1, g, ps).is_err());
    }

    #[test]
    fn four_cycle_edge_paulis() {
        let r = Realization::cycle_from_strs(&["XI", "IX", "ZI", "IZ"]).unwrap();
        let l = r.edge_paulis().unwrap();
        let expected = ["XX", "ZX", "ZZ", "XZ"];
        for (op, e) in l.operators.iter().zip(expected) {
            assert!(op.same_letters(&e.parse().unwrap()), "{op} vs {e}");
            assert!((op * op).is_identity_letters());
            assert_eq!((op * op).phase(), crate::pauli::Phase::ONE);
        }
        let rep = r.check_edge_constraints().unwrap();
        assert_eq!(rep.commuting_edge_pairs, 2);
        assert!(l.get(0).commutes(l.get(2)).unwrap());
        assert!(!l.get(0).commutes(l.get(1)).unwrap());
        assert!(!l.get(0).commutes(l.get(3)).unwrap());
    }

    #[test]
    fn c2_rows() {
        let r = construct_c2(3).unwrap();
        let s: Vec<String> = r.paulis().iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["XII", "IXI", "ZIX", "ZZI", "IZZ"]);
        let r2 = construct_c2(2).unwrap();
        let s2: Vec<String> = r2.paulis().iter().map(|p| p.to_string()).collect();
        assert_eq!(s2, ["XI", "IX", "ZI", "IZ"]);
        let r1 = construct_c2(1).unwrap();
        assert_eq!(r1.len(), 3);
        assert!(r1.is_faithful());
    }

    #[test]
    fn acc_rows() {
        let r = construct_acc(4).unwrap();
        let s: Vec<String> = r.paulis().iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["XIII", "IXII", "ZIXI", "IZIX"]);
        for m in 3..=7 {
            assert!(construct_acc(m).unwrap().is_faithful(), "m = {m}");
        }
        assert!(construct_acc(2).is_err());
    }

    #[test]
    fn path_conversions() {
        let c3 = path_to_cycle(&h3_path()).unwrap();
        assert_eq!(c3.qubits(), 2);
        assert!(c3.is_faithful());
        let h4 = concat_paths(&h3_path(), &h3_path()).unwrap();
        assert_eq!((h4.len(), h4.qubits()), (4, 2));
        assert!(h4.is_faithful());
        assert!(path_to_cycle(&Realization::path_from_strs(&["X", "X"]).unwrap()).is_err());
    }

    #[test]
    fn seeds() {
        let h8 = h8_seed();
        assert!(h8.is_faithful());
        assert!(!h8.paulis()[0].commutes(&h8.paulis()[7]).unwrap());
        let c8 = path_to_cycle(&h8).unwrap();
        assert_eq!((c8.len(), c8.qubits()), (8, 4));
        assert!(c8.is_faithful());
        assert!(h5_seed().is_faithful());
        let h14 = concat_paths(&h8, &h8).unwrap();
        assert_eq!((h14.len(), h14.qubits()), (14, 6));
        assert!(h14.is_faithful());
    }

    #[test]
    fn big_path_sizes() {
        for m in 3..=10 {
            let r = big_path(m).unwrap();
            assert_eq!(r.qubits(), m);
            assert_eq!(r.len(), if m % 3 == 0 { 2 * m + 2 } else { 2 * m + 1 });
            assert!(r.is_faithful());
        }
        assert!(big_path(2).is_err());
    }

    #[test]
    fn big_cycle_sizes() {
        for (m, n) in [(4, 8), (5, 9), (6, 11), (7, 14)] {
            let r = big_cycle(m).unwrap();
            assert_eq!((r.qubits(), r.len()), (m, n));
            assert_eq!(big_cycle_size(m), n);
            r.check_edge_constraints().unwrap();
        }
        assert!(big_cycle(3).is_err());
    }

    #[test]
    fn witness_sizes() {
        let s = impossibility_witness(&construct_c2(3).unwrap()).unwrap();
        assert_eq!(s.len(), 2);
        let s = impossibility_witness(&construct_c2(2).unwrap()).unwrap();
        assert_eq!(s.len(), 2);
        let s = impossibility_witness(&big_cycle(5).unwrap()).unwrap();
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn json_roundtrip() {
        let r = construct_c2(2).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            r#"{"m":2,"graph":{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]},"paulis":["XI","IX","ZI","IZ"]}"#
        );
        let back: Realization = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        let bad = r#"{"m":2,"graph":{"n":2,"edges":[[0,1]]},"paulis":["XI","IXZ"]}"#;
        assert!(serde_json::from_str::<Realization>(bad).is_err());
    }
}
