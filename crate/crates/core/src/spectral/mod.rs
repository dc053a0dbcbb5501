//! Dense matrices of Pauli sums, Hermitian eigen-analysis and pure states.
//!
//! Basis states are indexed with qubit 1 as the most significant bit, so the
//! Pauli text `XZ` maps to the Kronecker product `X ⊗ Z` in that order.

mod eigen;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::contextuality::EmpiricalModel;
use crate::error::{Error, Result};
use crate::graph::Scenario;
use crate::pauli::{Phase, PhasedPauli};
use crate::realization::Realization;

/// Largest qubit count for dense matrices (dimension 4096).
pub const MAX_DENSE_QUBITS: usize = 12;

const HERMITIAN_TOL: f64 = 1e-12;
const NORM_TOL: f64 = 1e-10;
const CLAMP_TOL: f64 = 1e-12;
const NEGATIVE_PROBABILITY_TOL: f64 = 1e-9;

fn check_dense(m: usize) -> Result<usize> {
    if m > MAX_DENSE_QUBITS {
        return Err(Error::DimensionOverflow(m, MAX_DENSE_QUBITS));
    }
    Ok(1 << m)
}

/// Real linear combination of m-qubit Pauli operators.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    m: usize,
    terms: Vec<(f64, PhasedPauli)>,
}

impl PauliSum {
    pub fn new(m: usize) -> PauliSum {
        PauliSum {
            m,
            terms: Vec::new(),
        }
    }

    pub fn from_terms(
        m: usize,
        terms: impl IntoIterator<Item = (f64, PhasedPauli)>,
    ) -> Result<PauliSum> {
        let mut s = PauliSum::new(m);
        for (c, p) in terms {
            s.push(c, p)?;
        }
        Ok(s)
    }

    pub fn push(&mut self, coefficient: f64, p: PhasedPauli) -> Result<()> {
        if p.qubits() != self.m {
            return Err(Error::QubitMismatch(self.m, p.qubits()));
        }
        if !coefficient.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "non-finite coefficient {coefficient}"
            )));
        }
        self.terms.push((coefficient, p));
        Ok(())
    }

    pub fn qubits(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &[(f64, PhasedPauli)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Hermitian when every nonzero term carries a real phase.
    pub fn is_hermitian(&self) -> bool {
        self.terms
            .iter()
            .all(|(c, p)| *c == 0.0 || p.phase().is_real())
    }

    /// Merges terms with equal letters, folding real phases into the
    /// coefficients, and drops zero terms. Terms are ordered by their text form.
    pub fn simplified(&self) -> PauliSum {
        let mut real: BTreeMap<String, (f64, PhasedPauli)> = BTreeMap::new();
        let mut imaginary: BTreeMap<String, (f64, PhasedPauli)> = BTreeMap::new();
        for (c, p) in &self.terms {
            let unsigned = p.unsigned();
            let key = unsigned.to_string();
            let (slot, sign) = match p.phase() {
                Phase::ONE => (&mut real, 1.0),
                Phase::MINUS_ONE => (&mut real, -1.0),
                Phase::I => (&mut imaginary, 1.0),
                _ => (&mut imaginary, -1.0),
            };
            let entry = slot.entry(key).or_insert((0.0, unsigned));
            entry.0 += sign * c;
        }
        let mut out = PauliSum::new(self.m);
        for (c, p) in real.into_values() {
            if c != 0.0 {
                out.terms.push((c, p));
            }
        }
        for (c, p) in imaginary.into_values() {
            if c != 0.0 {
                out.terms.push((c, p.with_phase(Phase::I)));
            }
        }
        out
    }

    /// Coefficient of the letter string of `p` after simplification, with
    /// phase `+1`. Imaginary-phase terms are ignored.
    pub fn coefficient_of(&self, p: &PhasedPauli) -> f64 {
        let target = p.unsigned();
        self.terms
            .iter()
            .filter(|(_, q)| q.same_letters(&target))
            .filter_map(|(c, q)| q.phase().sign().map(|s| s * c))
            .sum()
    }

    pub fn to_dense(&self) -> Result<DenseMatrix> {
        let dim = check_dense(self.m)?;
        let mut out = DenseMatrix::zeros(dim);
        for (c, p) in &self.terms {
            let (x, z, base) = basis_action(p);
            let scale = base * *c;
            for col in 0..dim {
                let row = col ^ x;
                let sign = if (z & col).count_ones() % 2 == 1 {
                    -1.0
                } else {
                    1.0
                };
                out.entries[row * dim + col] += scale * sign;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, p)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{p}")?;
        }
        Ok(())
    }
}

/// Basis masks of `p` (qubit 1 at the top bit) and the scalar
/// `phase · i^{#Y}` such that `p|b⟩ = scalar · (-1)^{|z ∧ b|} |b ⊕ x⟩`.
fn basis_action(p: &PhasedPauli) -> (usize, usize, Complex64) {
    let m = p.qubits();
    let (mut x, mut z) = (0usize, 0usize);
    for q in 0..m {
        let bit = 1 << (m - 1 - q);
        if p.x_bit(q) {
            x |= bit;
        }
        if p.z_bit(q) {
            z |= bit;
        }
    }
    let ys = (x & z).count_ones();
    let scalar = (p.phase() * Phase::from_exponent(ys)).to_complex();
    (x, z, scalar)
}

/// `p |ψ⟩` for a state of matching dimension.
pub fn apply_pauli(p: &PhasedPauli, amplitudes: &[Complex64]) -> Result<Vec<Complex64>> {
    let dim = check_dense(p.qubits())?;
    if amplitudes.len() != dim {
        return Err(Error::DimensionMismatch(dim, amplitudes.len()));
    }
    let (x, z, scalar) = basis_action(p);
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for (b, a) in amplitudes.iter().enumerate() {
        let sign = if (z & b).count_ones() % 2 == 1 {
            -scalar
        } else {
            scalar
        };
        out[b ^ x] = sign * a;
    }
    Ok(out)
}

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> DenseMatrix {
        DenseMatrix {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(dim);
        for k in 0..dim {
            out.entries[k * dim + k] = Complex64::new(1.0, 0.0);
        }
        out
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<DenseMatrix> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch(dim, r.len()));
            }
            entries.extend_from_slice(r);
        }
        Ok(DenseMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.len()));
        }
        Ok(self
            .entries
            .chunks(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.dim;
        (0..n).all(|i| (i..n).all(|j| (self.get(i, j) - self.get(j, i).conj()).norm() <= tol))
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        if self.dim == 0 {
            return 0.0;
        }
        self.entries
            .chunks(self.dim)
            .map(|row| row.iter().map(|a| a.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// A dense matrix checked to be Hermitian, with power-of-two dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseHermitian {
    m: usize,
    matrix: DenseMatrix,
}

impl DenseHermitian {
    pub fn new(matrix: DenseMatrix) -> Result<DenseHermitian> {
        let dim = matrix.dim();
        if !dim.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "dimension {dim} is not a power of two"
            )));
        }
        let m = dim.trailing_zeros() as usize;
        check_dense(m)?;
        if !matrix.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::Numerical("matrix is not Hermitian".into()));
        }
        Ok(DenseHermitian { m, matrix })
    }

    pub fn qubits(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    fn is_real(&self) -> bool {
        self.matrix.entries.iter().all(|a| a.im == 0.0)
    }
}

/// Dense matrix of a Hermitian Pauli sum.
pub fn to_matrix(s: &PauliSum) -> Result<DenseHermitian> {
    if !s.is_hermitian() {
        return Err(Error::InvalidArgument(
            "Pauli sum has a term with imaginary phase".into(),
        ));
    }
    DenseHermitian::new(s.to_dense()?)
}

/// Unit vector in `(C^2)^{⊗m}`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    m: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Fails unless the length is a power of two and the norm is 1 to 1e-10.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<StateVector> {
        let m = Self::qubits_for(amplitudes.len())?;
        let norm = l2_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Numerical(format!(
                "state norm is {norm}, expected 1"
            )));
        }
        Ok(StateVector { m, amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<StateVector> {
        let m = Self::qubits_for(amplitudes.len())?;
        let norm = l2_norm(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Numerical("cannot normalize a zero vector".into()));
        }
        for a in amplitudes.iter_mut() {
            *a /= norm;
        }
        Ok(StateVector { m, amplitudes })
    }

    /// Computational basis state `|index⟩`, qubit 1 most significant.
    pub fn basis(m: usize, index: usize) -> Result<StateVector> {
        let dim = check_dense(m)?;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {m} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { m, amplitudes })
    }

    fn qubits_for(len: usize) -> Result<usize> {
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "state length {len} is not a power of two"
            )));
        }
        let m = len.trailing_zeros() as usize;
        check_dense(m)?;
        Ok(m)
    }

    pub fn qubits(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(inner(&self.amplitudes, &other.amplitudes))
    }
}

impl Serialize for StateVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.amplitudes.iter().map(|a| [a.re, a.im]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        StateVector::new(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect())
            .map_err(serde::de::Error::custom)
    }
}

fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Full spectrum in ascending order with orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    dim: usize,
    vectors: Vec<Complex64>,
}

impl Eigen {
    /// Eigenvector for `values[j]`.
    pub fn vector(&self, j: usize) -> StateVector {
        let amplitudes: Vec<Complex64> = (0..self.dim)
            .map(|r| self.vectors[r * self.dim + j])
            .collect();
        StateVector::normalized(amplitudes).expect("eigenvectors have unit norm")
    }
}

pub fn eigh(h: &DenseHermitian) -> Result<Eigen> {
    let n = h.dim();
    let vectors = if h.is_real() {
        let a = h.matrix.entries.iter().map(|c| c.re).collect();
        let (values, z) = eigen::eigh::<f64>(a, n, true)?;
        let z = z.expect("vectors requested");
        (
            values,
            z.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
        )
    } else {
        let (values, z) = eigen::eigh::<Complex64>(h.matrix.entries.clone(), n, true)?;
        (values, z.expect("vectors requested"))
    };
    Ok(Eigen {
        values: vectors.0,
        dim: n,
        vectors: vectors.1,
    })
}

/// Eigenvalues only, ascending.
pub fn eigenvalues(h: &DenseHermitian) -> Result<Vec<f64>> {
    let n = h.dim();
    if h.is_real() {
        let a = h.matrix.entries.iter().map(|c| c.re).collect();
        Ok(eigen::eigh::<f64>(a, n, false)?.0)
    } else {
        Ok(eigen::eigh::<Complex64>(h.matrix.entries.clone(), n, false)?.0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremeEigen {
    pub max: f64,
    pub max_vector: StateVector,
    pub min: f64,
}

/// Largest and smallest eigenvalue, with a top eigenvector whose residual
/// `‖Hv − λv‖` is checked against `tol · ‖H‖`.
pub fn extreme_eigen(h: &DenseHermitian, tol: f64) -> Result<ExtremeEigen> {
    let eig = eigh(h)?;
    let n = h.dim();
    let v = eig.vector(n - 1);
    let max = eig.values[n - 1];
    let hv = h.matrix.apply(v.amplitudes())?;
    let residual = l2_norm(
        &hv.iter()
            .zip(v.amplitudes())
            .map(|(a, b)| a - max * b)
            .collect::<Vec<_>>(),
    );
    let scale = h.matrix.norm_inf().max(f64::MIN_POSITIVE);
    if residual > tol * scale {
        return Err(Error::Numerical(format!(
            "eigenvector residual {residual:e} exceeds {:e}",
            tol * scale
        )));
    }
    Ok(ExtremeEigen {
        max,
        max_vector: v,
        min: eig.values[0],
    })
}

/// `⟨ψ|S|ψ⟩`, evaluated term by term without forming the matrix. For a
/// Hermitian sum the imaginary part must vanish to 1e-10.
pub fn expectation(state: &StateVector, s: &PauliSum) -> Result<f64> {
    let value = expectation_complex(state, s)?;
    if s.is_hermitian() && value.im.abs() > NORM_TOL {
        return Err(Error::Numerical(format!(
            "expectation of a Hermitian sum has imaginary part {:e}",
            value.im
        )));
    }
    Ok(value.re)
}

pub fn expectation_complex(state: &StateVector, s: &PauliSum) -> Result<Complex64> {
    if state.qubits() != s.qubits() {
        return Err(Error::QubitMismatch(state.qubits(), s.qubits()));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for (c, p) in s.terms() {
        let pv = apply_pauli(p, state.amplitudes())?;
        total += *c * inner(state.amplitudes(), &pv);
    }
    Ok(total)
}

pub fn pauli_expectation(state: &StateVector, p: &PhasedPauli) -> Result<f64> {
    expectation(
        state,
        &PauliSum::from_terms(p.qubits(), [(1.0, p.clone())])?,
    )
}

/// Joint outcome probabilities of every context of `sc`, measured with the
/// operators of `r` on `state`.
///
/// Outcome index bit `j` set means the `j`-th vertex of the context gave
/// `-1`. Probabilities are `⟨ψ| ∏ (I ± P)/2 |ψ⟩`; values in `[-1e-9, 0)` are
/// clamped to zero and anything more negative is an error.
pub fn quantum_behavior(
    r: &Realization,
    state: &StateVector,
    sc: &Scenario,
) -> Result<EmpiricalModel> {
    if r.graph() != sc.graph() {
        return Err(Error::InvalidArgument(
            "realization graph differs from the scenario graph".into(),
        ));
    }
    r.require_faithful()?;
    if state.qubits() != r.qubits() {
        return Err(Error::QubitMismatch(state.qubits(), r.qubits()));
    }
    let tables = sc
        .contexts()
        .iter()
        .map(|ctx| context_distribution(r, state, ctx))
        .collect::<Result<Vec<_>>>()?;
    EmpiricalModel::new(sc.clone(), tables)
}

fn context_distribution(r: &Realization, state: &StateVector, ctx: &[usize]) -> Result<Vec<f64>> {
    let ops: Vec<&PhasedPauli> = ctx.iter().map(|&v| &r.paulis()[v]).collect();
    for (i, a) in ops.iter().enumerate() {
        for b in &ops[i + 1..] {
            if !a.commutes(b)? {
                return Err(Error::InvalidArgument(format!(
                    "context operators {a} and {b} do not commute"
                )));
            }
        }
    }
    let k = ctx.len();
    let psi = state.amplitudes();
    let mut table = Vec::with_capacity(1 << k);
    for outcome in 0..1usize << k {
        let mut phi = psi.to_vec();
        for (j, p) in ops.iter().enumerate() {
            let sign = if outcome >> j & 1 == 1 { -1.0 } else { 1.0 };
            let pphi = apply_pauli(p, &phi)?;
            for (a, b) in phi.iter_mut().zip(&pphi) {
                *a = (*a + sign * b) * 0.5;
            }
        }
        let mut prob = inner(psi, &phi).re;
        if prob < -NEGATIVE_PROBABILITY_TOL {
            return Err(Error::Numerical(format!(
                "negative probability {prob:e} for context {ctx:?}"
            )));
        }
        if prob < CLAMP_TOL {
            prob = prob.max(0.0);
        }
        table.push(prob);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sum(m: usize, terms: &[(f64, &str)]) -> PauliSum {
        PauliSum::from_terms(m, terms.iter().map(|(c, s)| (*c, s.parse().unwrap()))).unwrap()
    }

    #[test]
    fn single_letters() {
        let x = to_matrix(&sum(1, &[(1.0, "X")])).unwrap();
        let expected =
            DenseMatrix::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]])
                .unwrap();
        assert_eq!(x.matrix(), &expected);
        let y = sum(1, &[(1.0, "Y")]).to_dense().unwrap();
        assert_eq!(y.get(0, 1), c(0., -1.));
        assert_eq!(y.get(1, 0), c(0., 1.));
        let iz = to_matrix(&sum(1, &[(1.0, "I"), (1.0, "Z")])).unwrap();
        assert_eq!(iz.matrix().get(0, 0), c(2., 0.));
        assert_eq!(iz.matrix().get(1, 1), c(0., 0.));
    }

    #[test]
    fn qubit_one_is_most_significant() {
        // X on qubit 1 flips the top bit.
        let xi = sum(2, &[(1.0, "XI")]).to_dense().unwrap();
        assert_eq!(xi.get(0b10, 0b00), c(1., 0.));
        let zero_one = StateVector::basis(2, 0b01).unwrap();
        assert_eq!(
            pauli_expectation(&zero_one, &"IZ".parse().unwrap()).unwrap(),
            -1.0
        );
        assert_eq!(
            pauli_expectation(&zero_one, &"ZI".parse().unwrap()).unwrap(),
            1.0
        );
    }

    #[test]
    fn non_hermitian_sum_rejected() {
        assert!(to_matrix(&sum(1, &[(1.0, "iX")])).is_err());
        assert!(sum(1, &[(1.0, "iX")]).to_dense().is_ok());
    }

    #[test]
    fn simplification_folds_signs() {
        let s = sum(
            2,
            &[
                (1.0, "XY"),
                (2.0, "-XY"),
                (3.0, "ZZ"),
                (1.0, "iZZ"),
                (1.0, "-iZZ"),
            ],
        )
        .simplified();
        assert_eq!(s.len(), 2);
        assert_eq!(s.coefficient_of(&"XY".parse().unwrap()), -1.0);
        assert_eq!(s.coefficient_of(&"ZZ".parse().unwrap()), 3.0);
    }

    #[test]
    fn pauli_spectrum() {
        let h = to_matrix(&sum(3, &[(1.0, "XYZ")])).unwrap();
        let vals = eigenvalues(&h).unwrap();
        assert!(vals[..4].iter().all(|v| (v + 1.0).abs() < 1e-12));
        assert!(vals[4..].iter().all(|v| (v - 1.0).abs() < 1e-12));
        let z = to_matrix(&sum(1, &[(1.0, "Z")])).unwrap();
        let e = extreme_eigen(&z, 1e-12).unwrap();
        assert_eq!((e.max, e.min), (1.0, -1.0));
    }

    #[test]
    fn state_json() {
        let s = StateVector::normalized(vec![c(1., 0.), c(0., 1.)]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: StateVector = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<StateVector>("[[1,0],[1,0]]").is_err());
        assert!(serde_json::from_str::<StateVector>("[[1,0],[0,0],[0,0]]").is_err());
    }

    #[test]
    fn basis_state_behavior() {
        let r = crate::realization::construct_c2(2).unwrap();
        let sc = Scenario::new(r.graph().clone()).unwrap();
        let model = quantum_behavior(&r, &StateVector::basis(2, 0).unwrap(), &sc).unwrap();
        // Context {ZI, IZ} is the edge between vertices 2 and 3.
        let k = sc.contexts().iter().position(|c| c == &vec![2, 3]).unwrap();
        assert_eq!(model.tables()[k], vec![1.0, 0.0, 0.0, 0.0]);
    }
}
