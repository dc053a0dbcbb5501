//! Two 5-cycles sharing two edges on two qubits: spectrum of the correlator
//! operator, its classical range and the polytope-membership verdict.

use pauli_cycles::contextuality::{conjoined_counterexample, Membership};

fn main() -> pauli_cycles::Result<()> {
    let rep = conjoined_counterexample()?;
    let ops: Vec<String> = rep
        .realization
        .paulis()
        .iter()
        .map(|p| p.to_string())
        .collect();
    println!("operators: {}", ops.join(" "));
    println!(
        "induced 4-cycles: {}, induced 5-cycles: {}",
        rep.induced_four_cycles, rep.induced_five_cycles
    );
    println!("operator: {}", rep.operator);
    println!(
        "spectrum range: [{:.6}, {:.6}]",
        rep.lambda_min, rep.lambda_max
    );
    println!(
        "printed state: norm {:.7}, expectation {:.6}",
        rep.printed_state_norm, rep.printed_state_expectation
    );
    println!(
        "claimed bound {}, max over ±1 assignments {}",
        rep.claimed_bound, rep.classical_max
    );
    match &rep.membership {
        Membership::Inside { jpd } => println!(
            "top eigenvector model: inside the noncontextual polytope ({} atoms)",
            jpd.support_size()
        ),
        Membership::Outside { certificate } => println!(
            "top eigenvector model: outside, violation {:.3e}",
            certificate.violation()
        ),
    }
    Ok(())
}
