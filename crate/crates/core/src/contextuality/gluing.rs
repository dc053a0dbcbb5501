//! Joint distributions for two noncontextual sub-scenarios glued along a
//! shared clique: `p(a) = p_1(a|V_1) · p_2(a|V_2) / p_S(a|S)`.

use std::collections::BTreeMap;

use super::membership::{nc_membership, Membership};
use super::model::{local_outcome, EmpiricalModel, JointDistribution};
use crate::error::{Error, Result};
use crate::graph::induced_cycles;

const ZERO_MARGINAL: f64 = 1e-12;
const ZERO_NUMERATOR: f64 = 1e-10;
const REPRODUCTION_TOL: f64 = 1e-8;

/// Glues joint distributions of the sub-models on `part1` and `part2`.
///
/// Every context must lie inside one of the parts and the shared vertices
/// must lie in a common context. Each sub-model gets its distribution from
/// [`nc_membership`]; the result is checked against every context table.
pub fn glue_jpd(
    model: &EmpiricalModel,
    part1: &[usize],
    part2: &[usize],
) -> Result<JointDistribution> {
    let n = model.n_vertices();
    let mut covered = vec![false; n];
    for &v in part1.iter().chain(part2) {
        if v >= n {
            return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
        }
        covered[v] = true;
    }
    if covered.iter().any(|c| !c) {
        return Err(Error::InvalidArgument(
            "parts do not cover the scenario".into(),
        ));
    }
    for ctx in model.scenario().contexts() {
        let inside = |part: &[usize]| ctx.iter().all(|v| part.contains(v));
        if !inside(part1) && !inside(part2) {
            return Err(Error::InvalidArgument(format!(
                "context {ctx:?} straddles the two parts"
            )));
        }
    }
    let shared: Vec<usize> = part1
        .iter()
        .copied()
        .filter(|v| part2.contains(v))
        .collect();
    if shared.is_empty() {
        return Err(Error::InvalidArgument("parts share no vertex".into()));
    }
    let p_shared = model.marginal(&shared)?;

    let lift = |part: &[usize]| -> Result<Vec<(u64, f64)>> {
        match nc_membership(&model.restrict(part)?)? {
            Membership::Inside { jpd } => Ok(jpd
                .weights()
                .map(|(a, w)| {
                    let global = part
                        .iter()
                        .enumerate()
                        .fold(0u64, |g, (j, &v)| g | ((a >> j) & 1) << v);
                    (global, w)
                })
                .collect()),
            Membership::Outside { .. } => Err(Error::InvalidArgument(format!(
                "sub-model on {part:?} has no joint distribution"
            ))),
        }
    };
    let w1 = lift(part1)?;
    let w2 = lift(part2)?;

    let shared_mask = shared.iter().fold(0u64, |m, &v| m | 1 << v);
    let mut weights: BTreeMap<u64, f64> = BTreeMap::new();
    for &(a1, p1) in &w1 {
        for &(a2, p2) in &w2 {
            if (a1 ^ a2) & shared_mask != 0 {
                continue;
            }
            let denom = p_shared[local_outcome(a1, &shared)];
            let numer = p1 * p2;
            if denom <= ZERO_MARGINAL {
                if numer > ZERO_NUMERATOR {
                    return Err(Error::Numerical(format!(
                        "weight {numer:e} over a vanishing shared marginal"
                    )));
                }
                continue;
            }
            *weights.entry(a1 | a2).or_insert(0.0) += numer / denom;
        }
    }
    let total: f64 = weights.values().sum();
    let jpd = JointDistribution::new(n, weights.into_iter().map(|(a, w)| (a, w / total)))?;
    let dev = jpd.max_deviation(model)?;
    if dev > REPRODUCTION_TOL {
        return Err(Error::Numerical(format!(
            "glued distribution misses the model by {dev:e}"
        )));
    }
    Ok(jpd)
}

/// The two induced 5-cycles of the scenario, if there are exactly two.
fn two_five_cycles(model: &EmpiricalModel) -> Result<(Vec<usize>, Vec<usize>)> {
    let cycles: Vec<Vec<usize>> = induced_cycles(model.scenario().graph(), 5)
        .into_iter()
        .filter(|c| c.len() == 5)
        .collect();
    match cycles.as_slice() {
        [a, b] => Ok((a.clone(), b.clone())),
        _ => Err(Error::InvalidArgument(format!(
            "expected two induced 5-cycles, found {}",
            cycles.len()
        ))),
    }
}

/// Joint distribution for two 5-cycles sharing one vertex.
pub fn glue_jpd_node(model: &EmpiricalModel) -> Result<JointDistribution> {
    let (c1, c2) = two_five_cycles(model)?;
    let shared = c1.iter().filter(|v| c2.contains(v)).count();
    if shared != 1 {
        return Err(Error::InvalidArgument(format!(
            "node gluing needs one shared vertex, found {shared}"
        )));
    }
    glue_jpd(model, &c1, &c2)
}

/// Joint distribution for two 5-cycles sharing one edge.
pub fn glue_jpd_edge(model: &EmpiricalModel) -> Result<JointDistribution> {
    let (c1, c2) = two_five_cycles(model)?;
    let shared: Vec<usize> = c1.iter().copied().filter(|v| c2.contains(v)).collect();
    if shared.len() != 2 || !model.scenario().graph().has_edge(shared[0], shared[1]) {
        return Err(Error::InvalidArgument(format!(
            "edge gluing needs one shared edge, found vertices {shared:?}"
        )));
    }
    glue_jpd(model, &c1, &c2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{conjoined_five_cycles, Scenario};

    #[test]
    fn deterministic_gluing() {
        for shared in [1, 2] {
            let sc = Scenario::new(conjoined_five_cycles(shared).unwrap()).unwrap();
            let a = 0b1_0110_1001 & ((1u64 << sc.n_vertices()) - 1);
            let model = EmpiricalModel::deterministic(&sc, a);
            let jpd = if shared == 1 {
                glue_jpd_node(&model).unwrap()
            } else {
                glue_jpd_edge(&model).unwrap()
            };
            assert_eq!(jpd.probability(a), 1.0);
        }
    }

    #[test]
    fn wrong_shape_rejected() {
        let sc = Scenario::new(conjoined_five_cycles(2).unwrap()).unwrap();
        let model = EmpiricalModel::deterministic(&sc, 0);
        assert!(glue_jpd_node(&model).is_err());
        assert!(glue_jpd_edge(&model).is_ok());
    }
}
