//! Noncontextuality inequalities, the `Γ` operator analysis of cycle
//! realizations, polytope membership, gluing of joint distributions and the
//! conjoined-cycle counterexample.

mod counterexample;
mod gluing;
mod inequality;
mod membership;
mod model;

use serde::Serialize;

use crate::graph::{induced_cycles, is_chordal, Scenario};

pub use counterexample::{
    conjoined_counterexample, conjoined_realization, printed_state_amplitudes,
    CorrelatorFunctional, CounterexampleReport, CONJOINED_PAULIS, PRINTED_STATE,
};
pub use gluing::{glue_jpd, glue_jpd_edge, glue_jpd_node};
pub use inequality::{
    enumerate_cycle_inequalities, four_cycle_product_coefficient, gamma_operator,
    gamma_squared_symbolic, quantum_value, quantum_value_only, surviving_pair_count,
    tsirelson_state, CycleInequality, QuantumValue,
};
pub use membership::{nc_membership, Certificate, Membership, MAX_MEMBERSHIP_VERTICES};
pub use model::{EmpiricalModel, GeneralInequality, JointDistribution, NO_DISTURBANCE_TOL};

/// Outcome of the chordality test on a scenario's compatibility graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GateVerdict {
    /// Chordal: every empirical model has a joint distribution.
    TriviallyNoncontextual,
    /// Not chordal. This alone does not decide contextuality.
    Candidate { induced_cycles: Vec<Vec<usize>> },
}

pub fn vorobev_gate(sc: &Scenario) -> GateVerdict {
    let g = sc.graph();
    if is_chordal(g) {
        GateVerdict::TriviallyNoncontextual
    } else {
        GateVerdict::Candidate {
            induced_cycles: induced_cycles(g, g.n_vertices()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{conjoined_five_cycles, cycle_graph};

    #[test]
    fn gate_verdicts() {
        let tri = Scenario::new(cycle_graph(3).unwrap()).unwrap();
        assert_eq!(vorobev_gate(&tri), GateVerdict::TriviallyNoncontextual);
        let c4 = Scenario::new(cycle_graph(4).unwrap()).unwrap();
        assert_eq!(
            vorobev_gate(&c4),
            GateVerdict::Candidate {
                induced_cycles: vec![vec![0, 1, 2, 3]]
            }
        );
        let sc = Scenario::new(conjoined_five_cycles(3).unwrap()).unwrap();
        let GateVerdict::Candidate { induced_cycles } = vorobev_gate(&sc) else {
            panic!("conjoined cycles are not chordal");
        };
        assert_eq!(induced_cycles.iter().filter(|c| c.len() == 5).count(), 2);
        assert!(induced_cycles.iter().all(|c| c.len() != 4));
    }
}
