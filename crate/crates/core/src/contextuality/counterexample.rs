//! Two 5-cycles sharing two edges, realized on two qubits.
//!
//! The operator of [`CorrelatorFunctional::conjoined`] has largest eigenvalue
//! about 4.2716. Its classical maximum over ±1 assignments is 8, though, so
//! a value above 4 alone does not certify contextuality; the report carries
//! both numbers and the LP verdict on the induced model.

use num_complex::Complex64;
use serde::Serialize;

use super::membership::{nc_membership, Membership};
use super::model::GeneralInequality;
use crate::error::{Error, Result};
use crate::graph::{conjoined_five_cycles, induced_cycles, Scenario};
use crate::pauli::product;
use crate::realization::Realization;
use crate::spectral::{self, expectation, quantum_behavior, to_matrix, PauliSum, StateVector};

/// Operators of vertices `0..7` of [`conjoined_five_cycles`]`(3)`.
pub const CONJOINED_PAULIS: [&str; 7] = ["IX", "ZX", "YY", "IY", "XI", "ZY", "YX"];

/// Four-amplitude top eigenvector quoted to four decimals (norm about 1.00005).
pub const PRINTED_STATE: [(f64, f64); 4] = [
    (0.2787, -0.5952),
    (-0.2787, -0.3342),
    (-0.4092, 0.1482),
    (-0.4352, 0.0),
];

/// `Σ c_ab A_a A_b + Σ c_a A_a` over compatible pairs and single vertices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrelatorFunctional {
    pub pairs: Vec<(usize, usize, f64)>,
    pub singles: Vec<(usize, f64)>,
}

impl CorrelatorFunctional {
    /// Correlator functional on the conjoined cycles, claimed bound 4.
    pub fn conjoined() -> CorrelatorFunctional {
        CorrelatorFunctional {
            pairs: vec![
                (0, 1, -1.0),
                (1, 2, -1.0),
                (2, 3, -1.0),
                (3, 4, -1.0),
                (0, 6, -1.0),
                (3, 5, 1.0),
            ],
            singles: vec![(3, -1.0), (4, -1.0), (5, -1.0), (6, -1.0)],
        }
    }

    /// Value on a deterministic assignment; bit `v` set means `A_v = -1`.
    pub fn classical_value(&self, assignment: u64) -> f64 {
        let a = |v: usize| if assignment >> v & 1 == 1 { -1.0 } else { 1.0 };
        self.pairs
            .iter()
            .map(|&(x, y, c)| c * a(x) * a(y))
            .sum::<f64>()
            + self.singles.iter().map(|&(x, c)| c * a(x)).sum::<f64>()
    }

    pub fn classical_max(&self, n: usize) -> f64 {
        (0..1u64 << n)
            .map(|a| self.classical_value(a))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// The operator obtained by substituting each vertex's Pauli.
    pub fn operator(&self, r: &Realization) -> Result<PauliSum> {
        let p = r.paulis();
        let mut out = PauliSum::new(r.qubits());
        for &(a, b, c) in &self.pairs {
            if !r.graph().has_edge(a, b) {
                return Err(Error::InvalidArgument(format!(
                    "vertices {a} and {b} are not compatible"
                )));
            }
            let prod = product(r.qubits(), &[&p[a], &p[b]])?;
            let s = prod
                .phase()
                .sign()
                .ok_or_else(|| Error::Constraint(format!("{prod} is not Hermitian")))?;
            out.push(c * s, prod.unsigned())?;
        }
        for &(a, c) in &self.singles {
            let s = p[a]
                .phase()
                .sign()
                .expect("realization operators are Hermitian");
            out.push(c * s, p[a].unsigned())?;
        }
        Ok(out)
    }

    /// The same functional written on context tables: each pair term goes
    /// to the context holding the pair, each single term to the first
    /// context holding the vertex.
    pub fn to_general(&self, scenario: &Scenario, bound: f64) -> Result<GeneralInequality> {
        let contexts = scenario.contexts();
        let mut coefficients: Vec<Vec<f64>> =
            contexts.iter().map(|c| vec![0.0; 1 << c.len()]).collect();
        let sign = |outcome: usize, pos: usize| if outcome >> pos & 1 == 1 { -1.0 } else { 1.0 };
        let find = |vs: &[usize]| {
            contexts
                .iter()
                .position(|c| vs.iter().all(|v| c.contains(v)))
                .ok_or_else(|| Error::InvalidArgument(format!("no context holds {vs:?}")))
        };
        for &(a, b, c) in &self.pairs {
            let k = find(&[a, b])?;
            let pa = contexts[k]
                .iter()
                .position(|v| *v == a)
                .expect("in context");
            let pb = contexts[k]
                .iter()
                .position(|v| *v == b)
                .expect("in context");
            for (o, coef) in coefficients[k].iter_mut().enumerate() {
                *coef += c * sign(o, pa) * sign(o, pb);
            }
        }
        for &(a, c) in &self.singles {
            let k = find(&[a])?;
            let pa = contexts[k]
                .iter()
                .position(|v| *v == a)
                .expect("in context");
            for (o, coef) in coefficients[k].iter_mut().enumerate() {
                *coef += c * sign(o, pa);
            }
        }
        Ok(GeneralInequality {
            coefficients,
            bound,
        })
    }
}

/// Bound quoted alongside the functional.
pub const CLAIMED_BOUND: f64 = 4.0;

pub fn conjoined_realization() -> Result<Realization> {
    Realization::from_strs(conjoined_five_cycles(3)?, &CONJOINED_PAULIS)
}

pub fn printed_state_amplitudes() -> Vec<Complex64> {
    PRINTED_STATE
        .iter()
        .map(|&(re, im)| Complex64::new(re, im))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub realization: Realization,
    pub operator: String,
    pub claimed_bound: f64,
    /// Maximum over deterministic ±1 assignments.
    pub classical_max: f64,
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub witness_state: StateVector,
    pub witness_expectation: f64,
    pub printed_state_norm: f64,
    pub printed_state_expectation: f64,
    /// Value of the same functional computed from the context tables.
    pub table_value: f64,
    pub induced_four_cycles: usize,
    pub induced_five_cycles: usize,
    pub membership: Membership,
}

/// Builds the conjoined scenario and its realization, diagonalizes the
/// functional's operator and runs the membership LP on the model induced by
/// its top eigenvector.
pub fn conjoined_counterexample() -> Result<CounterexampleReport> {
    let r = conjoined_realization()?;
    r.require_faithful()?;
    let sc = Scenario::new(r.graph().clone())?;
    let functional = CorrelatorFunctional::conjoined();
    let classical_max = functional.classical_max(sc.n_vertices());
    let op = functional.operator(&r)?;
    let eig = spectral::extreme_eigen(&to_matrix(&op)?, 1e-10)?;
    let witness_expectation = expectation(&eig.max_vector, &op)?;

    let amps = printed_state_amplitudes();
    let printed_state_norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let printed = StateVector::normalized(amps)?;
    let printed_state_expectation = expectation(&printed, &op)?;

    let model = quantum_behavior(&r, &eig.max_vector, &sc)?;
    let table_value = functional
        .to_general(&sc, classical_max)?
        .evaluate(&model)?;
    let cycles = induced_cycles(sc.graph(), sc.n_vertices());
    let count = |k: usize| cycles.iter().filter(|c| c.len() == k).count();
    let membership = nc_membership(&model)?;

    Ok(CounterexampleReport {
        operator: op.simplified().to_string(),
        realization: r,
        claimed_bound: CLAIMED_BOUND,
        classical_max,
        lambda_max: eig.max,
        lambda_min: eig.min,
        witness_state: eig.max_vector,
        witness_expectation,
        printed_state_norm,
        printed_state_expectation,
        table_value,
        induced_four_cycles: count(4),
        induced_five_cycles: count(5),
        membership,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn realization_is_faithful() {
        let r = conjoined_realization().unwrap();
        assert!(r.is_faithful());
        assert_eq!(r.paulis()[2].to_string(), "YY");
    }

    #[test]
    fn functional_reaches_eight_classically() {
        let f = CorrelatorFunctional::conjoined();
        assert_eq!(f.classical_max(7), 8.0);
        // A1 = +1, A2 = -1, A3 = +1, A4..A7 = -1
        assert_eq!(f.classical_value(0b111_1010), 8.0);
    }

    #[test]
    fn report_numbers() {
        let rep = conjoined_counterexample().unwrap();
        assert!((rep.lambda_max - 4.2716).abs() < 1e-3);
        assert!((rep.witness_expectation - rep.lambda_max).abs() < 1e-9);
        assert!((rep.table_value - rep.witness_expectation).abs() < 1e-8);
        assert!((rep.printed_state_norm - 1.0).abs() < 1e-4);
        assert!(rep.printed_state_expectation > 4.27);
        assert_eq!((rep.induced_four_cycles, rep.induced_five_cycles), (0, 2));
    }

    #[test]
    fn general_form_agrees_on_deterministic_models() {
        let sc = Scenario::new(conjoined_five_cycles(3).unwrap()).unwrap();
        let f = CorrelatorFunctional::conjoined();
        let g = f.to_general(&sc, 4.0).unwrap();
        for a in 0..128 {
            assert_eq!(g.evaluate_deterministic(&sc, a), f.classical_value(a));
        }
    }
}
