//! Noncontextual polytope membership by linear programming, and joint
//! distributions glued from two 5-cycle halves.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use pauli_cycles::contextuality::{
    glue_jpd_edge, glue_jpd_node, nc_membership, tsirelson_state, CycleInequality, Membership,
};
use pauli_cycles::graph::{conjoined_five_cycles, Scenario};
use pauli_cycles::realization::construct_c2;
use pauli_cycles::search::find_graph_realization;
use pauli_cycles::spectral::{quantum_behavior, StateVector};

fn random_state(m: usize, rng: &mut StdRng) -> pauli_cycles::Result<StateVector> {
    let amps = (0..1 << m)
        .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    StateVector::normalized(amps)
}

fn main() -> pauli_cycles::Result<()> {
    let mut rng = StdRng::seed_from_u64(7);

    let c4 = construct_c2(2)?;
    let sc4 = Scenario::new(c4.graph().clone())?;
    let ineq = CycleInequality::new(vec![1, 1, 1, -1])?;
    let model = quantum_behavior(&c4, &tsirelson_state(&c4, &ineq)?, &sc4)?;
    match nc_membership(&model)? {
        Membership::Outside { certificate } => println!(
            "4-cycle at 2√2: outside, certificate value {:.6} > bound {:.6}",
            certificate.model_value, certificate.inequality.bound
        ),
        Membership::Inside { .. } => println!("4-cycle at 2√2: inside"),
    }

    let c5 = construct_c2(3)?;
    let sc5 = Scenario::new(c5.graph().clone())?;
    let mut inside = 0;
    for _ in 0..20 {
        let model = quantum_behavior(&c5, &random_state(3, &mut rng)?, &sc5)?;
        if let Membership::Inside { jpd } = nc_membership(&model)? {
            assert!(jpd.max_deviation(&model)? < 1e-8);
            inside += 1;
        }
    }
    println!("5-cycle at 20 random states: {inside} inside");

    // Sharing a vertex needs 4 qubits; sharing an edge needs 3.
    for (shared, m) in [(1, 4), (2, 3)] {
        let g = conjoined_five_cycles(shared)?;
        let r = find_graph_realization(&g, m, 1_000_000)?.expect("realizable on m qubits");
        let sc = Scenario::new(g)?;
        let model = quantum_behavior(&r, &random_state(m, &mut rng)?, &sc)?;
        let jpd = if shared == 1 {
            glue_jpd_node(&model)?
        } else {
            glue_jpd_edge(&model)?
        };
        let ops: Vec<String> = r.paulis().iter().map(|p| p.to_string()).collect();
        println!(
            "glued on {shared} vertex(es) [{}]: {} atoms, max table deviation {:.1e}",
            ops.join(" "),
            jpd.support_size(),
            jpd.max_deviation(&model)?
        );
    }
    Ok(())
}
