//! Explicit faithful cycle realizations and their impossibility witnesses.

use pauli_cycles::realization::{
    big_cycle, construct_acc, construct_c2, impossibility_witness, Realization,
};

fn show(name: &str, r: &Realization) -> pauli_cycles::Result<()> {
    r.require_faithful()?;
    let constraints = r.check_edge_constraints()?;
    let witness = impossibility_witness(r)?;
    let ops: Vec<String> = r.paulis().iter().map(|p| p.to_string()).collect();
    println!(
        "{name:<12} m={} n={:<3} commuting edge pairs={:<3} witness size={}  [{}]",
        r.qubits(),
        r.len(),
        constraints.commuting_edge_pairs,
        witness.len(),
        ops.join(" ")
    );
    Ok(())
}

fn main() -> pauli_cycles::Result<()> {
    for m in 4..=6 {
        show(&format!("acc({m})"), &construct_acc(m)?)?;
    }
    for m in 2..=5 {
        show(&format!("c2({m})"), &construct_c2(m)?)?;
    }
    for m in 4..=7 {
        show(&format!("big({m})"), &big_cycle(m)?)?;
    }
    Ok(())
}
