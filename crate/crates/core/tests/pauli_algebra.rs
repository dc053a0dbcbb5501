mod common;

use proptest::prelude::*;

use common::{matmul, max_diff, pauli_matrix, scale};
use pauli_cycles::pauli::{independent, Phase, PhasedPauli};
use pauli_cycles::spectral::{to_matrix, PauliSum};

fn pauli(m: usize) -> impl Strategy<Value = PhasedPauli> {
    let mask = (1u64 << m) - 1;
    (any::<u64>(), any::<u64>(), 0u32..4).prop_map(move |(x, z, k)| {
        PhasedPauli::from_masks(m, x & mask, z & mask).with_phase(Phase::from_exponent(k))
    })
}

fn hermitian(m: usize) -> impl Strategy<Value = PhasedPauli> {
    pauli(m).prop_map(|p| p.unsigned())
}

proptest! {
    #[test]
    fn commutation_matches_matrices(p in pauli(3), q in pauli(3)) {
        let (a, b) = (pauli_matrix(&p), pauli_matrix(&q));
        let commute = max_diff(&matmul(&a, &b), &matmul(&b, &a)) == 0.0;
        prop_assert_eq!(p.commutes(&q).unwrap(), commute);
    }

    #[test]
    fn product_matches_matrices(p in pauli(3), q in pauli(3)) {
        let pq = p.multiply(&q).unwrap();
        prop_assert!(max_diff(&pauli_matrix(&pq), &matmul(&pauli_matrix(&p), &pauli_matrix(&q))) < 1e-12);
    }

    #[test]
    fn reversed_product_differs_by_sign(p in pauli(4), q in pauli(4)) {
        let pq = p.multiply(&q).unwrap();
        let qp = q.multiply(&p).unwrap();
        if p.commutes(&q).unwrap() {
            prop_assert_eq!(pq, qp);
        } else {
            prop_assert_eq!(pq, qp.negated());
        }
    }

    #[test]
    fn multiplication_is_associative(p in pauli(4), q in pauli(4), r in pauli(4)) {
        let left = p.multiply(&q).unwrap().multiply(&r).unwrap();
        let right = p.multiply(&q.multiply(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn hermitian_squares_to_identity(p in hermitian(5)) {
        prop_assert_eq!(p.multiply(&p).unwrap(), PhasedPauli::identity(5));
    }

    #[test]
    fn embedding_preserves_commutation(p in pauli(2), q in pauli(2), e in pauli(1), f in pauli(1)) {
        let ep = p.embed(&e);
        let eq = q.embed(&f);
        let expected = p.commutes(&q).unwrap() == e.commutes(&f).unwrap();
        prop_assert_eq!(ep.commutes(&eq).unwrap(), expected);
    }

    #[test]
    fn dense_matrix_is_multiplicative(p in hermitian(3), q in hermitian(3)) {
        let pq = p.multiply(&q).unwrap();
        let dense = |x: &PhasedPauli| PauliSum::from_terms(3, [(1.0, x.clone())]).unwrap().to_dense().unwrap();
        let prod = dense(&p).matmul(&dense(&q)).unwrap();
        prop_assert!(prod.max_abs_diff(&dense(&pq)) < 1e-12);
    }

    #[test]
    fn string_round_trip(p in pauli(6)) {
        let back: PhasedPauli = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn two_qubit_group_exhaustive() {
    let all: Vec<PhasedPauli> = (0..16u64)
        .map(|k| PhasedPauli::from_masks(2, k & 3, k >> 2))
        .collect();
    for p in &all {
        for q in &all {
            let (a, b) = (pauli_matrix(p), pauli_matrix(q));
            let ab = matmul(&a, &b);
            let commute = max_diff(&ab, &matmul(&b, &a)) == 0.0;
            assert_eq!(p.commutes(q).unwrap(), commute, "{p} {q}");
            assert!(max_diff(&pauli_matrix(&p.multiply(q).unwrap()), &ab) < 1e-12);
        }
    }
}

#[test]
fn dense_path_matches_kronecker() {
    let mut rng = rand::thread_rng();
    for _ in 0..50 {
        let m = 3;
        let terms: Vec<(f64, PhasedPauli)> = (0..4)
            .map(|_| {
                (
                    rand::Rng::gen_range(&mut rng, -2.0..2.0),
                    common::random_pauli(m, &mut rng).unsigned(),
                )
            })
            .collect();
        let mut oracle = scale(&pauli_matrix(&PhasedPauli::identity(m)), 0.0.into());
        for (c, p) in &terms {
            oracle = common::add(&oracle, &scale(&pauli_matrix(p), (*c).into()));
        }
        let h = to_matrix(&PauliSum::from_terms(m, terms).unwrap()).unwrap();
        for (i, row) in oracle.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert!((h.matrix().get(i, j) - x).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn independence_matches_subset_products() {
    // A set is dependent iff some non-empty subset multiplies to ± identity letters.
    let mut rng = rand::thread_rng();
    for _ in 0..300 {
        let set: Vec<PhasedPauli> = (0..4)
            .map(|_| common::random_pauli(2, &mut rng).unsigned())
            .collect();
        let dependent = (1u32..16).any(|mask| {
            let mut acc = PhasedPauli::identity(2);
            for (k, p) in set.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    acc = acc.multiply(p).unwrap();
                }
            }
            acc.is_identity_letters()
        });
        assert_eq!(independent(&set).unwrap(), !dependent);
    }
}
