//! Beyond four vertices no Pauli realization beats the classical bound.

use pauli_cycles::contextuality::{
    enumerate_cycle_inequalities, gamma_squared_symbolic, quantum_value_only, surviving_pair_count,
    CycleInequality,
};
use pauli_cycles::realization::{big_cycle, construct_acc, construct_c2, Realization};

fn main() -> pauli_cycles::Result<()> {
    let c5 = construct_c2(3)?;
    let g5 = CycleInequality::new(vec![1, 1, 1, 1, -1])?;
    println!(
        "n=5: Γ² = {}",
        gamma_squared_symbolic(&c5, &g5)?.simplified()
    );

    let mut cycles: Vec<(String, Realization)> = Vec::new();
    for m in 3..=7 {
        cycles.push((format!("c2({m})"), construct_c2(m)?));
    }
    for m in 5..=9 {
        cycles.push((format!("acc({m})"), construct_acc(m)?));
    }
    cycles.push(("big(4)".into(), big_cycle(4)?));
    cycles.push(("big(5)".into(), big_cycle(5)?));

    for (name, r) in &cycles {
        let n = r.len();
        let mut best = f64::NEG_INFINITY;
        for ineq in enumerate_cycle_inequalities(n)? {
            best = best.max(quantum_value_only(r, &ineq)?);
        }
        println!(
            "{name:<8} n={n}  max quantum value {best:.6}  classical {}  √(n²-4n) {:.6}  surviving pairs {}",
            n - 2,
            ((n * n - 4 * n) as f64).sqrt(),
            surviving_pair_count(n)
        );
    }
    Ok(())
}
