use proptest::prelude::*;

use pauli_cycles::graph::{cycle_graph, glue, induced_cycles, is_chordal, Graph};
use pauli_cycles::pauli::PhasedPauli;
use pauli_cycles::realization::{H5_SEED, H8_SEED};
use pauli_cycles::search::{
    enumerate_cycle_realizations, find_realization, realizability_table, SearchConfig, Verdict,
};

/// Ordered faithful n-cycles of distinct non-identity m-qubit Paulis, by a
/// plain depth-first search that checks commutation with `PhasedPauli`.
fn naive_cycle_count(m: usize, n: usize, stop_at_first: bool) -> usize {
    let ops: Vec<PhasedPauli> = (1..1u64 << (2 * m))
        .map(|k| PhasedPauli::from_masks(m, k & ((1 << m) - 1), k >> m))
        .collect();
    fn rec(ops: &[PhasedPauli], n: usize, placed: &mut Vec<usize>, stop: bool, count: &mut usize) {
        let k = placed.len();
        if k == n {
            *count += 1;
            return;
        }
        for c in 0..ops.len() {
            if placed.contains(&c) {
                continue;
            }
            let ok = placed.iter().enumerate().all(|(j, &p)| {
                let adjacent = j + 1 == k || (j == 0 && k == n - 1);
                ops[c].commutes(&ops[p]).unwrap() == adjacent
            });
            if ok {
                placed.push(c);
                rec(ops, n, placed, stop, count);
                placed.pop();
                if stop && *count > 0 {
                    return;
                }
            }
        }
    }
    let mut count = 0;
    rec(&ops, n, &mut Vec::new(), stop_at_first, &mut count);
    count
}

#[test]
fn two_qubit_verdicts_match_naive_search() {
    for n in 4..=8 {
        let naive = naive_cycle_count(2, n, true) > 0;
        let cfg = SearchConfig::cycle(2, n).with_cycle_bound(false);
        let found = find_realization(&cfg).unwrap().verdict() == Verdict::Found;
        assert_eq!(found, naive, "n = {n}");
    }
}

#[test]
fn enumeration_counts_every_orientation_once() {
    for n in 4..=6 {
        let listed = enumerate_cycle_realizations(2, n).unwrap();
        assert!(listed.iter().all(|r| r.is_faithful()));
        assert_eq!(
            2 * n * listed.len(),
            naive_cycle_count(2, n, false),
            "n = {n}"
        );
    }
}

#[test]
fn canonicalization_preserves_verdicts() {
    for (m, sizes) in [(2, 4..=9), (3, 4..=10)] {
        for n in sizes {
            let verdict = |canon: bool| {
                let cfg = SearchConfig::cycle(m, n)
                    .with_canonicalize(canon)
                    .with_cycle_bound(false);
                find_realization(&cfg).unwrap().verdict()
            };
            assert_eq!(verdict(true), verdict(false), "m = {m}, n = {n}");
        }
    }
}

#[test]
fn cycle_bound_agrees_with_exhaustion() {
    for (m, n) in [(2, 7), (2, 8), (3, 10), (3, 11)] {
        let cfg = SearchConfig::cycle(m, n).with_cycle_bound(false);
        assert_eq!(
            find_realization(&cfg).unwrap().verdict(),
            Verdict::Impossible
        );
    }
}

#[test]
fn seeds_are_the_first_canonical_solutions() {
    let h8 = find_realization(&SearchConfig::path(3, 8)).unwrap();
    let ops: Vec<String> = h8
        .realization()
        .unwrap()
        .paulis()
        .iter()
        .map(|p| p.to_string())
        .collect();
    assert_eq!(ops, H8_SEED);
    let h5 = find_realization(&SearchConfig::path(2, 5)).unwrap();
    let ops: Vec<String> = h5
        .realization()
        .unwrap()
        .paulis()
        .iter()
        .map(|p| p.to_string())
        .collect();
    assert_eq!(ops, H5_SEED);
}

#[test]
fn extended_tables() {
    let t4 = realizability_table(4, 4..=13, u64::MAX, 2).unwrap();
    assert_eq!(t4.max_found(), Some(9));
    assert!(t4.entries.values().all(|v| *v != Verdict::Budget));
    let t5 = realizability_table(5, 4..=16, u64::MAX, 2).unwrap();
    assert_eq!(t5.max_found(), Some(12));
    assert_eq!(t5.entries[&13], Verdict::Impossible);
}

#[test]
fn threaded_search_returns_faithful_results() {
    for threads in [2, 4] {
        let rep = find_realization(&SearchConfig::cycle(4, 9).with_threads(threads)).unwrap();
        assert!(rep.realization().unwrap().is_faithful());
    }
}

fn random_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if bits[k] {
                        edges.push((a, b));
                    }
                    k += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn chordal_iff_no_long_induced_cycle(g in random_graph(9)) {
        let long = induced_cycles(&g, g.n_vertices()).iter().any(|c| c.len() >= 4);
        prop_assert_eq!(is_chordal(&g), !long);
    }

    #[test]
    fn gluing_adds_degrees(n in 3usize..8, k in 1usize..3) {
        let c = cycle_graph(n).unwrap();
        let ident: Vec<(usize, usize)> = (0..k).map(|i| (i, i)).collect();
        let g = glue(&c, &c, &ident).unwrap();
        prop_assert_eq!(g.n_vertices(), 2 * n - k);
        // Shared edges are counted once.
        prop_assert_eq!(g.n_edges(), 2 * n - (k - 1));
        for v in k..n {
            prop_assert_eq!(g.degree(v), 2);
        }
    }
}
