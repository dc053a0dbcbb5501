use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Scenario};

/// Tolerance for shared marginals of overlapping contexts.
pub const NO_DISTURBANCE_TOL: f64 = 1e-9;
const SUM_TOL: f64 = 1e-9;

/// Outcome index of `assignment` restricted to `vertices`: bit `j` is the
/// bit of `vertices[j]` in the global assignment (set means outcome `-1`).
pub(crate) fn local_outcome(assignment: u64, vertices: &[usize]) -> usize {
    vertices.iter().enumerate().fold(0, |acc, (j, &v)| {
        acc | (((assignment >> v) & 1) as usize) << j
    })
}

/// Marginal of a table over `ctx` onto the listed positions of `ctx`.
fn table_marginal(table: &[f64], positions: &[usize]) -> Vec<f64> {
    let mut out = vec![0.0; 1 << positions.len()];
    for (outcome, p) in table.iter().enumerate() {
        let idx = positions
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &pos)| acc | ((outcome >> pos) & 1) << j);
        out[idx] += p;
    }
    out
}

/// Per-context joint outcome distributions over `±1` outcomes.
///
/// Table `k` belongs to context `k` of the scenario and has `2^|context|`
/// entries; bit `j` of an entry's index set means the `j`-th vertex of the
/// context reported `-1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelJson", into = "ModelJson")]
pub struct EmpiricalModel {
    scenario: Scenario,
    tables: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    graph: Graph,
    contexts: Vec<Vec<usize>>,
    tables: Vec<Vec<f64>>,
}

impl TryFrom<ModelJson> for EmpiricalModel {
    type Error = Error;

    fn try_from(j: ModelJson) -> Result<EmpiricalModel> {
        let scenario = Scenario::new(j.graph)?;
        if scenario.contexts() != j.contexts.as_slice() {
            return Err(Error::InvalidGraph(
                "contexts must be the maximal cliques of the graph, sorted".into(),
            ));
        }
        EmpiricalModel::new(scenario, j.tables)
    }
}

impl From<EmpiricalModel> for ModelJson {
    fn from(m: EmpiricalModel) -> ModelJson {
        ModelJson {
            contexts: m.scenario.contexts().to_vec(),
            graph: m.scenario.graph().clone(),
            tables: m.tables,
        }
    }
}

impl EmpiricalModel {
    /// Checks table shapes, normalization and no-disturbance.
    pub fn new(scenario: Scenario, tables: Vec<Vec<f64>>) -> Result<EmpiricalModel> {
        let contexts = scenario.contexts();
        if tables.len() != contexts.len() {
            return Err(Error::InvalidArgument(format!(
                "{} tables for {} contexts",
                tables.len(),
                contexts.len()
            )));
        }
        for (ctx, t) in contexts.iter().zip(&tables) {
            if t.len() != 1 << ctx.len() {
                return Err(Error::InvalidArgument(format!(
                    "context {ctx:?} needs {} entries, got {}",
                    1usize << ctx.len(),
                    t.len()
                )));
            }
            if t.iter().any(|p| !p.is_finite() || *p < -SUM_TOL) {
                return Err(Error::InvalidArgument(format!(
                    "context {ctx:?} has a negative or non-finite probability"
                )));
            }
            let total: f64 = t.iter().sum();
            if (total - 1.0).abs() > SUM_TOL {
                return Err(Error::InvalidArgument(format!(
                    "context {ctx:?} sums to {total}"
                )));
            }
        }
        let model = EmpiricalModel { scenario, tables };
        model.check_no_disturbance()?;
        Ok(model)
    }

    fn check_no_disturbance(&self) -> Result<()> {
        let contexts = self.scenario.contexts();
        for a in 0..contexts.len() {
            for b in a + 1..contexts.len() {
                let shared: Vec<usize> = contexts[a]
                    .iter()
                    .copied()
                    .filter(|v| contexts[b].contains(v))
                    .collect();
                if shared.is_empty() {
                    continue;
                }
                let ma = self.context_marginal(a, &shared);
                let mb = self.context_marginal(b, &shared);
                let dev = ma
                    .iter()
                    .zip(&mb)
                    .map(|(x, y)| (x - y).abs())
                    .fold(0.0, f64::max);
                if dev > NO_DISTURBANCE_TOL {
                    return Err(Error::Disturbance(
                        contexts[a].clone(),
                        contexts[b].clone(),
                        dev,
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn tables(&self) -> &[Vec<f64>] {
        &self.tables
    }

    pub fn n_vertices(&self) -> usize {
        self.scenario.n_vertices()
    }

    /// Marginal of context `k`'s table onto `vertices` (all inside the context).
    pub fn context_marginal(&self, k: usize, vertices: &[usize]) -> Vec<f64> {
        let ctx = &self.scenario.contexts()[k];
        let positions: Vec<usize> = vertices
            .iter()
            .map(|v| {
                ctx.iter()
                    .position(|c| c == v)
                    .expect("vertex lies in the context")
            })
            .collect();
        table_marginal(&self.tables[k], &positions)
    }

    /// Marginal onto `vertices`, read from any context containing all of them.
    pub fn marginal(&self, vertices: &[usize]) -> Result<Vec<f64>> {
        let k = self
            .scenario
            .contexts()
            .iter()
            .position(|ctx| vertices.iter().all(|v| ctx.contains(v)))
            .ok_or_else(|| {
                Error::InvalidArgument(format!("no context contains all of {vertices:?}"))
            })?;
        Ok(self.context_marginal(k, vertices))
    }

    /// `⟨A_a A_b⟩ = Σ a·b·p(a, b)` for a compatible pair.
    pub fn correlator(&self, a: usize, b: usize) -> Result<f64> {
        let m = self.marginal(&[a, b])?;
        Ok(m[0] - m[1] - m[2] + m[3])
    }

    /// `⟨A_a⟩`.
    pub fn mean(&self, a: usize) -> Result<f64> {
        let m = self.marginal(&[a])?;
        Ok(m[0] - m[1])
    }

    /// The model on the subgraph induced by `vertices`, relabelled in the
    /// given order. Every context of the induced scenario must be a context of
    /// this one.
    pub fn restrict(&self, vertices: &[usize]) -> Result<EmpiricalModel> {
        let sub = Scenario::new(self.scenario.graph().induced_subgraph(vertices))?;
        let tables = sub
            .contexts()
            .iter()
            .map(|local| {
                let global: Vec<usize> = local.iter().map(|&v| vertices[v]).collect();
                let mut sorted = global.clone();
                sorted.sort_unstable();
                let k = self
                    .scenario
                    .contexts()
                    .iter()
                    .position(|c| *c == sorted)
                    .ok_or_else(|| {
                        Error::InvalidArgument(format!(
                            "{global:?} is not a context of the full scenario"
                        ))
                    })?;
                Ok(self.context_marginal(k, &global))
            })
            .collect::<Result<Vec<_>>>()?;
        EmpiricalModel::new(sub, tables)
    }

    /// Model produced by a deterministic global assignment.
    pub fn deterministic(scenario: &Scenario, assignment: u64) -> EmpiricalModel {
        let tables = scenario
            .contexts()
            .iter()
            .map(|ctx| {
                let mut t = vec![0.0; 1 << ctx.len()];
                t[local_outcome(assignment, ctx)] = 1.0;
                t
            })
            .collect();
        EmpiricalModel {
            scenario: scenario.clone(),
            tables,
        }
    }
}

/// Probability distribution over global `±1` assignments, stored sparsely.
/// Bit `v` of an assignment set means vertex `v` takes value `-1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "JpdJson", into = "JpdJson")]
pub struct JointDistribution {
    n: usize,
    weights: BTreeMap<u64, f64>,
}

#[derive(Serialize, Deserialize)]
struct JpdJson {
    n: usize,
    weights: Vec<JpdEntry>,
}

#[derive(Serialize, Deserialize)]
struct JpdEntry {
    outcomes: String,
    probability: f64,
}

impl TryFrom<JpdJson> for JointDistribution {
    type Error = Error;

    fn try_from(j: JpdJson) -> Result<JointDistribution> {
        let mut weights = Vec::with_capacity(j.weights.len());
        for e in j.weights {
            if e.outcomes.chars().count() != j.n {
                return Err(Error::InvalidArgument(format!(
                    "assignment {:?} does not have {} entries",
                    e.outcomes, j.n
                )));
            }
            let mut a = 0u64;
            for (v, ch) in e.outcomes.chars().enumerate() {
                match ch {
                    '+' => {}
                    '-' => a |= 1 << v,
                    _ => {
                        return Err(Error::InvalidArgument(format!(
                            "assignment {:?} must use '+' and '-'",
                            e.outcomes
                        )))
                    }
                }
            }
            weights.push((a, e.probability));
        }
        JointDistribution::new(j.n, weights)
    }
}

impl From<JointDistribution> for JpdJson {
    fn from(d: JointDistribution) -> JpdJson {
        JpdJson {
            n: d.n,
            weights: d
                .weights
                .iter()
                .map(|(&a, &p)| JpdEntry {
                    outcomes: (0..d.n)
                        .map(|v| if a >> v & 1 == 1 { '-' } else { '+' })
                        .collect(),
                    probability: p,
                })
                .collect(),
        }
    }
}

impl JointDistribution {
    /// Repeated assignments are merged; entries must be nonnegative and sum
    /// to one within 1e-9.
    pub fn new(
        n: usize,
        weights: impl IntoIterator<Item = (u64, f64)>,
    ) -> Result<JointDistribution> {
        if n > 63 {
            return Err(Error::InvalidArgument(format!("{n} vertices is too many")));
        }
        let mut map = BTreeMap::new();
        for (a, p) in weights {
            if a >> n != 0 {
                return Err(Error::InvalidArgument(format!(
                    "assignment {a:#b} has bits beyond {n} vertices"
                )));
            }
            if !p.is_finite() || p < 0.0 {
                return Err(Error::InvalidArgument(format!("invalid weight {p}")));
            }
            if p > 0.0 {
                *map.entry(a).or_insert(0.0) += p;
            }
        }
        let total: f64 = map.values().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::Numerical(format!(
                "joint distribution sums to {total}"
            )));
        }
        Ok(JointDistribution { n, weights: map })
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.weights.iter().map(|(&a, &p)| (a, p))
    }

    pub fn support_size(&self) -> usize {
        self.weights.len()
    }

    pub fn probability(&self, assignment: u64) -> f64 {
        self.weights.get(&assignment).copied().unwrap_or(0.0)
    }

    /// Marginal onto `vertices`, indexed like a context table.
    pub fn marginal(&self, vertices: &[usize]) -> Vec<f64> {
        let mut out = vec![0.0; 1 << vertices.len()];
        for (&a, &p) in &self.weights {
            out[local_outcome(a, vertices)] += p;
        }
        out
    }

    /// Largest deviation between this distribution's context marginals and
    /// the model's tables.
    pub fn max_deviation(&self, model: &EmpiricalModel) -> Result<f64> {
        if model.n_vertices() != self.n {
            return Err(Error::DimensionMismatch(model.n_vertices(), self.n));
        }
        let mut worst: f64 = 0.0;
        for (ctx, table) in model.scenario().contexts().iter().zip(model.tables()) {
            for (a, b) in self.marginal(ctx).iter().zip(table) {
                worst = worst.max((a - b).abs());
            }
        }
        Ok(worst)
    }
}

/// Linear functional `Σ_c Σ_o coefficients[c][o] · p_c(o) ≤ bound` on
/// empirical models; `coefficients` follows the scenario's context order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneralInequality {
    pub coefficients: Vec<Vec<f64>>,
    pub bound: f64,
}

impl GeneralInequality {
    pub fn evaluate(&self, model: &EmpiricalModel) -> Result<f64> {
        self.check_shape(model.scenario())?;
        Ok(self
            .coefficients
            .iter()
            .zip(model.tables())
            .map(|(c, t)| c.iter().zip(t).map(|(a, b)| a * b).sum::<f64>())
            .sum())
    }

    /// Value on the model induced by a deterministic assignment.
    pub fn evaluate_deterministic(&self, scenario: &Scenario, assignment: u64) -> f64 {
        self.coefficients
            .iter()
            .zip(scenario.contexts())
            .map(|(c, ctx)| c[local_outcome(assignment, ctx)])
            .sum()
    }

    /// Exact maximum over all deterministic global assignments.
    pub fn deterministic_max(&self, scenario: &Scenario) -> Result<f64> {
        self.check_shape(scenario)?;
        let n = scenario.n_vertices();
        if n > 24 {
            return Err(Error::InvalidArgument(format!(
                "{n} vertices is too many to enumerate assignments"
            )));
        }
        Ok((0..1u64 << n)
            .map(|a| self.evaluate_deterministic(scenario, a))
            .fold(f64::NEG_INFINITY, f64::max))
    }

    fn check_shape(&self, scenario: &Scenario) -> Result<()> {
        let contexts = scenario.contexts();
        if self.coefficients.len() != contexts.len()
            || self
                .coefficients
                .iter()
                .zip(contexts)
                .any(|(c, ctx)| c.len() != 1 << ctx.len())
        {
            return Err(Error::InvalidArgument(
                "inequality shape does not match the scenario".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle_graph;

    fn c4() -> Scenario {
        Scenario::new(cycle_graph(4).unwrap()).unwrap()
    }

    #[test]
    fn deterministic_models_and_marginals() {
        let sc = c4();
        let m = EmpiricalModel::deterministic(&sc, 0b0101);
        assert_eq!(m.mean(0).unwrap(), -1.0);
        assert_eq!(m.mean(1).unwrap(), 1.0);
        assert_eq!(m.correlator(0, 1).unwrap(), -1.0);
        assert!(m.correlator(0, 2).is_err());
    }

    #[test]
    fn disturbance_detected() {
        let sc = c4();
        let mut tables = EmpiricalModel::deterministic(&sc, 0).tables().to_vec();
        // Vertex 0 becomes -1 in its first context only.
        tables[0] = vec![0.0, 1.0, 0.0, 0.0];
        assert!(matches!(
            EmpiricalModel::new(sc, tables),
            Err(Error::Disturbance(..))
        ));
    }

    #[test]
    fn model_json_round_trip() {
        let m = EmpiricalModel::deterministic(&c4(), 0b0011);
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.starts_with("{\"graph\""));
        let back: EmpiricalModel = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        let bad = text.replace("[0,1]", "[1,0]");
        assert!(serde_json::from_str::<EmpiricalModel>(&bad).is_err());
    }

    #[test]
    fn jpd_marginals() {
        let d = JointDistribution::new(3, [(0b000, 0.5), (0b110, 0.25), (0b110, 0.25)]).unwrap();
        assert_eq!(d.support_size(), 2);
        assert_eq!(d.marginal(&[1, 2]), vec![0.5, 0.0, 0.0, 0.5]);
        assert_eq!(d.marginal(&[0]), vec![1.0, 0.0]);
        let text = serde_json::to_string(&d).unwrap();
        assert!(text.contains("\"+--\""));
        assert_eq!(serde_json::from_str::<JointDistribution>(&text).unwrap(), d);
        assert!(JointDistribution::new(2, [(0, 0.7)]).is_err());
    }

    #[test]
    fn restriction_relabels() {
        let g = crate::graph::conjoined_five_cycles(2).unwrap();
        let sc = Scenario::new(g).unwrap();
        let m = EmpiricalModel::deterministic(&sc, 0b1000_0001);
        let sub = m.restrict(&[7, 0, 1]).unwrap();
        assert_eq!(sub.n_vertices(), 3);
        assert_eq!(sub.mean(0).unwrap(), -1.0);
        assert_eq!(sub.mean(1).unwrap(), -1.0);
        assert_eq!(sub.mean(2).unwrap(), 1.0);
    }
}
