use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::model::EmpiricalModel;
use crate::error::{Error, Result};
use crate::pauli::{Phase, PhasedPauli};
use crate::realization::{cyclic_distance, Realization};
use crate::spectral::{self, expectation, to_matrix, PauliSum, StateVector};

/// `Σ γ_i ⟨A_i A_{i+1}⟩ ≤ n − 2` with `γ_i = ±1` and an odd number of `-1`s.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleInequality {
    gamma: Vec<i8>,
}

impl CycleInequality {
    pub fn new(gamma: Vec<i8>) -> Result<CycleInequality> {
        if gamma.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "cycle inequality needs n >= 3, got {}",
                gamma.len()
            )));
        }
        if gamma.iter().any(|g| *g != 1 && *g != -1) {
            return Err(Error::InvalidArgument("signs must be +1 or -1".into()));
        }
        if gamma.iter().filter(|g| **g == -1).count() % 2 == 0 {
            return Err(Error::InvalidArgument(
                "the product of the signs must be -1".into(),
            ));
        }
        Ok(CycleInequality { gamma })
    }

    pub fn n(&self) -> usize {
        self.gamma.len()
    }

    pub fn gamma(&self) -> &[i8] {
        &self.gamma
    }

    pub fn bound(&self) -> f64 {
        (self.n() - 2) as f64
    }

    /// `Σ γ_i a_i a_{i+1}` for a `±1` assignment.
    pub fn classical_value(&self, assignment: &[i8]) -> i64 {
        let n = self.n();
        assert_eq!(assignment.len(), n, "assignment length");
        (0..n)
            .map(|i| (self.gamma[i] * assignment[i] * assignment[(i + 1) % n]) as i64)
            .sum()
    }

    /// The left-hand side on an empirical model of the n-cycle.
    pub fn evaluate(&self, model: &EmpiricalModel) -> Result<f64> {
        let n = self.n();
        if model.n_vertices() != n {
            return Err(Error::DimensionMismatch(n, model.n_vertices()));
        }
        (0..n)
            .map(|i| Ok(self.gamma[i] as f64 * model.correlator(i, (i + 1) % n)?))
            .sum()
    }
}

impl fmt::Display for CycleInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gamma {
            f.write_str(if *g == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for CycleInequality {
    type Err = Error;

    /// Sign string such as `+++-`.
    fn from_str(s: &str) -> Result<CycleInequality> {
        let gamma = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(Error::InvalidArgument(format!(
                    "sign string {s:?} may only contain '+' and '-'"
                ))),
            })
            .collect::<Result<Vec<i8>>>()?;
        CycleInequality::new(gamma)
    }
}

impl Serialize for CycleInequality {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CycleInequality {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// All `2^{n-1}` inequalities for the n-cycle, in increasing order of the
/// bit mask whose bit `i` marks `γ_i = -1`.
pub fn enumerate_cycle_inequalities(n: usize) -> Result<Vec<CycleInequality>> {
    if !(4..=24).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "cycle inequalities are enumerated for 4 <= n <= 24, got {n}"
        )));
    }
    Ok((0u32..1 << n)
        .filter(|mask| mask.count_ones() % 2 == 1)
        .map(|mask| CycleInequality {
            gamma: (0..n)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect(),
        })
        .collect())
}

fn check_sizes(r: &Realization, ineq: &CycleInequality) -> Result<usize> {
    r.require_faithful()?;
    let n = r.len();
    if !r.graph().is_labelled_cycle() {
        return Err(Error::InvalidArgument(
            "realization is not of a cycle".into(),
        ));
    }
    if ineq.n() != n {
        return Err(Error::DimensionMismatch(n, ineq.n()));
    }
    Ok(n)
}

/// Edge Pauli as a signed unsigned-letter operator: `L = s · Q`.
fn signed(l: &PhasedPauli) -> Result<(f64, PhasedPauli)> {
    let s = l
        .phase()
        .sign()
        .ok_or_else(|| Error::Constraint(format!("edge Pauli {l} is not Hermitian")))?;
    Ok((s, l.unsigned()))
}

/// `Γ = Σ γ_i L_i` with the edge-Pauli signs folded into the coefficients.
pub fn gamma_operator(r: &Realization, ineq: &CycleInequality) -> Result<PauliSum> {
    check_sizes(r, ineq)?;
    let edges = r.edge_paulis()?;
    let mut out = PauliSum::new(r.qubits());
    for (g, l) in ineq.gamma().iter().zip(&edges.operators) {
        let (s, q) = signed(l)?;
        out.push(*g as f64 * s, q)?;
    }
    Ok(out)
}

/// Exact expansion of `Γ²` in the Pauli basis.
///
/// All `n²` ordered products `γ_i γ_k L_i L_k` are formed with exact phases
/// and collected with integer coefficients, so anticommuting pairs cancel
/// exactly. The result is `n·I + Σ_{i<k, [L_i,L_k]=0} 2 γ_i γ_k L_i L_k`.
pub fn gamma_squared_symbolic(r: &Realization, ineq: &CycleInequality) -> Result<PauliSum> {
    let n = check_sizes(r, ineq)?;
    let edges = r.edge_paulis()?;
    let l = &edges.operators;
    // Coefficients as integer multiples of 1 and i, keyed by letter string.
    let mut acc: BTreeMap<String, (PhasedPauli, i64, i64)> = BTreeMap::new();
    for i in 0..n {
        for k in 0..n {
            let prod = l[i].multiply(&l[k])?;
            let g = (ineq.gamma()[i] * ineq.gamma()[k]) as i64;
            let unsigned = prod.unsigned();
            let entry = acc.entry(unsigned.to_string()).or_insert((unsigned, 0, 0));
            match prod.phase() {
                Phase::ONE => entry.1 += g,
                Phase::MINUS_ONE => entry.1 -= g,
                Phase::I => entry.2 += g,
                _ => entry.2 -= g,
            }
        }
    }
    let mut out = PauliSum::new(r.qubits());
    for (_, (p, re, im)) in acc {
        if im != 0 {
            return Err(Error::Numerical(format!(
                "Γ² has an imaginary coefficient on {p}"
            )));
        }
        if re != 0 {
            out.push(re as f64, p)?;
        }
    }
    Ok(out)
}

/// Number of commuting unordered edge-Pauli pairs of a faithful n-cycle,
/// `2(n−5) + (n−5)(n−4)/2`, cross-checked against a direct count of pairs at
/// cyclic distance at least three.
pub fn surviving_pair_count(n: usize) -> usize {
    assert!(n >= 5, "surviving_pair_count needs n >= 5, got {n}");
    let closed_form = 2 * (n - 5) + (n - 5) * (n - 4) / 2;
    let direct = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| cyclic_distance(i, j, n) >= 3)
        .count();
    assert_eq!(closed_form, direct, "pair count mismatch at n = {n}");
    closed_form
}

#[derive(Clone, Debug, Serialize)]
pub struct QuantumValue {
    pub value: f64,
    pub witness: StateVector,
}

const EIGEN_TOL: f64 = 1e-10;

/// Largest eigenvalue of `Γ` and a top eigenvector.
pub fn quantum_value(r: &Realization, ineq: &CycleInequality) -> Result<QuantumValue> {
    let h = to_matrix(&gamma_operator(r, ineq)?)?;
    let e = spectral::extreme_eigen(&h, EIGEN_TOL)?;
    Ok(QuantumValue {
        value: e.max,
        witness: e.max_vector,
    })
}

/// Largest eigenvalue of `Γ` only.
pub fn quantum_value_only(r: &Realization, ineq: &CycleInequality) -> Result<f64> {
    let h = to_matrix(&gamma_operator(r, ineq)?)?;
    let vals = spectral::eigenvalues(&h)?;
    Ok(*vals.last().expect("nonempty spectrum"))
}

/// Coefficient `c` in `Γ² = 4I + c · P_0 P_1 P_2 P_3` for a 4-cycle, read
/// from the exact expansion.
pub fn four_cycle_product_coefficient(r: &Realization, ineq: &CycleInequality) -> Result<f64> {
    let n = check_sizes(r, ineq)?;
    if n != 4 {
        return Err(Error::InvalidArgument(format!(
            "expected a 4-cycle, got n = {n}"
        )));
    }
    let p = r.paulis();
    let prod = crate::pauli::product(r.qubits(), &[&p[0], &p[1], &p[2], &p[3]])?;
    let sign = prod
        .phase()
        .sign()
        .ok_or_else(|| Error::Constraint(format!("P0P1P2P3 = {prod} is not Hermitian")))?;
    let sq = gamma_squared_symbolic(r, ineq)?;
    let identity = PhasedPauli::identity(r.qubits());
    if sq.len() != 2 || sq.coefficient_of(&identity) != 4.0 {
        return Err(Error::Numerical(format!("unexpected 4-cycle Γ² = {sq}")));
    }
    Ok(sign * sq.coefficient_of(&prod))
}

/// A state reaching `2√2` on a 4-cycle inequality.
///
/// The top eigenvector of `Γ` is checked to give `⟨Γ⟩ = 2√2` and to be an
/// eigenvector of `P_0 P_1 P_2 P_3` with the eigenvalue `s = ±1` for which
/// `Γ² = 4(I + s P_0 P_1 P_2 P_3)` has eigenvalue 8. With `L_i = P_i P_{i+1}`
/// one finds `s = -γ_1 γ_3`.
pub fn tsirelson_state(r: &Realization, ineq: &CycleInequality) -> Result<StateVector> {
    let c = four_cycle_product_coefficient(r, ineq)?;
    let qv = quantum_value(r, ineq)?;
    let state = qv.witness;
    let gamma = gamma_operator(r, ineq)?;
    let value = expectation(&state, &gamma)?;
    let target = 8f64.sqrt();
    if (value - target).abs() > 1e-9 {
        return Err(Error::Numerical(format!(
            "Γ expectation {value} differs from 2√2"
        )));
    }
    let p = r.paulis();
    let prod = crate::pauli::product(r.qubits(), &[&p[0], &p[1], &p[2], &p[3]])?;
    let expected = c.signum();
    let moved = spectral::apply_pauli(&prod, state.amplitudes())?;
    let dev = moved
        .iter()
        .zip(state.amplitudes())
        .map(|(a, b)| (a - expected * b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if dev > 1e-9 {
        return Err(Error::Numerical(format!(
            "state is off the {expected:+} eigenspace of P0P1P2P3 by {dev:e}"
        )));
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::construct_c2;

    #[test]
    fn inequality_counts_and_signs() {
        assert_eq!(enumerate_cycle_inequalities(4).unwrap().len(), 8);
        assert_eq!(enumerate_cycle_inequalities(5).unwrap().len(), 16);
        for ineq in enumerate_cycle_inequalities(6).unwrap() {
            assert_eq!(ineq.gamma().iter().filter(|g| **g < 0).count() % 2, 1);
        }
        assert!("++++".parse::<CycleInequality>().is_err());
        assert_eq!(
            "+++-".parse::<CycleInequality>().unwrap().to_string(),
            "+++-"
        );
    }

    #[test]
    fn classical_bound_holds() {
        for n in 4..=8 {
            for ineq in enumerate_cycle_inequalities(n).unwrap() {
                let best = (0u32..1 << n)
                    .map(|a| {
                        let s: Vec<i8> = (0..n)
                            .map(|i| if a >> i & 1 == 1 { -1 } else { 1 })
                            .collect();
                        ineq.classical_value(&s)
                    })
                    .max()
                    .unwrap();
                assert_eq!(best, n as i64 - 2);
            }
        }
    }

    #[test]
    fn pair_counts() {
        assert_eq!(surviving_pair_count(5), 0);
        assert_eq!(surviving_pair_count(6), 3);
        assert_eq!(surviving_pair_count(9), 18);
    }

    #[test]
    fn five_cycle_gamma_square_is_scalar() {
        let r = construct_c2(3).unwrap();
        for ineq in enumerate_cycle_inequalities(5).unwrap() {
            let sq = gamma_squared_symbolic(&r, &ineq).unwrap();
            assert_eq!(sq.len(), 1);
            assert_eq!(sq.terms()[0].0, 5.0);
            assert!(sq.terms()[0].1.is_identity_letters());
        }
    }

    #[test]
    fn four_cycle_value() {
        let r = construct_c2(2).unwrap();
        let ineq: CycleInequality = "+++-".parse().unwrap();
        assert_eq!(gamma_operator(&r, &ineq).unwrap().len(), 4);
        let qv = quantum_value(&r, &ineq).unwrap();
        assert!((qv.value - 8f64.sqrt()).abs() < 1e-12);
        tsirelson_state(&r, &ineq).unwrap();
    }

    #[test]
    fn four_cycle_square_sign() {
        // Γ² = 4I + 2γ0γ2 L0L2 + 2γ1γ3 L1L3 with L0L2 = -L1L3 = P0P1P2P3.
        let r = construct_c2(2).unwrap();
        for ineq in enumerate_cycle_inequalities(4).unwrap() {
            let g = ineq.gamma();
            let c = four_cycle_product_coefficient(&r, &ineq).unwrap();
            assert_eq!(c, -4.0 * (g[1] * g[3]) as f64);
            assert_eq!(c, 2.0 * (g[0] * g[2] - g[1] * g[3]) as f64);
        }
    }
}
