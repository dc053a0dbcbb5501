//! Every faithful 2-qubit 4-cycle reaches 2√2 on all eight inequalities.

use pauli_cycles::contextuality::{
    enumerate_cycle_inequalities, four_cycle_product_coefficient, quantum_value, tsirelson_state,
};
use pauli_cycles::search::enumerate_cycle_realizations;

fn main() -> pauli_cycles::Result<()> {
    let realizations = enumerate_cycle_realizations(2, 4)?;
    println!("{} faithful 2-qubit 4-cycles", realizations.len());
    let first = &realizations[0];
    let ops: Vec<String> = first.paulis().iter().map(|p| p.to_string()).collect();
    println!("first: {}", ops.join(" "));
    for ineq in enumerate_cycle_inequalities(4)? {
        let qv = quantum_value(first, &ineq)?;
        let c = four_cycle_product_coefficient(first, &ineq)?;
        tsirelson_state(first, &ineq)?;
        println!(
            "  {ineq}  value {:.10}  bound {}  Γ² = 4I {:+}·P0P1P2P3",
            qv.value,
            ineq.bound(),
            c
        );
    }
    let mut worst: f64 = 0.0;
    for r in &realizations {
        for ineq in enumerate_cycle_inequalities(4)? {
            worst = worst.max((quantum_value(r, &ineq)?.value - 8f64.sqrt()).abs());
        }
    }
    println!("largest deviation from 2√2 over all of them: {worst:.2e}");
    Ok(())
}
