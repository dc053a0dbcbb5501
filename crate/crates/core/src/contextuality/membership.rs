//! Noncontextual polytope membership as a linear feasibility problem over
//! deterministic global assignments, solved with a dense phase-one simplex.

use serde::Serialize;

use super::model::{local_outcome, EmpiricalModel, GeneralInequality, JointDistribution};
use crate::error::{Error, Result};

/// Largest scenario accepted (2^16 deterministic assignments).
pub const MAX_MEMBERSHIP_VERTICES: usize = 16;

const PIVOT_TOL: f64 = 1e-11;
const FEASIBILITY_TOL: f64 = 1e-10;
const REPRODUCTION_TOL: f64 = 1e-8;
const SEPARATION_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Membership {
    Inside { jpd: JointDistribution },
    Outside { certificate: Certificate },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Membership::Inside { .. } => "inside",
            Membership::Outside { .. } => "outside",
        }
    }
}

/// A separating inequality: every deterministic assignment scores at most
/// `inequality.bound`, while the model scores `model_value`.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub inequality: GeneralInequality,
    pub model_value: f64,
}

impl Certificate {
    pub fn violation(&self) -> f64 {
        self.model_value - self.inequality.bound
    }
}

/// Decides whether `model` has a joint distribution over global outcome
/// assignments. Both answers are verified before they are returned: a
/// distribution must reproduce every table to 1e-8, and a certificate must
/// separate the model from every deterministic assignment.
pub fn nc_membership(model: &EmpiricalModel) -> Result<Membership> {
    let n = model.n_vertices();
    if n > MAX_MEMBERSHIP_VERTICES {
        return Err(Error::InvalidArgument(format!(
            "membership supports at most {MAX_MEMBERSHIP_VERTICES} vertices, got {n}"
        )));
    }
    let contexts = model.scenario().contexts();
    // One row per (context, outcome) pair.
    let mut rows: Vec<(usize, usize)> = Vec::new();
    let mut b = Vec::new();
    for (k, table) in model.tables().iter().enumerate() {
        for (o, &p) in table.iter().enumerate() {
            rows.push((k, o));
            b.push(p.max(0.0));
        }
    }
    let columns = 1usize << n;
    let mut lp = Tableau::new(rows.len(), columns);
    for (i, &(k, o)) in rows.iter().enumerate() {
        for a in 0..columns {
            if local_outcome(a as u64, &contexts[k]) == o {
                lp.set(i, a, 1.0);
            }
        }
        lp.set_rhs(i, b[i]);
    }
    lp.solve()?;

    if lp.objective() <= FEASIBILITY_TOL {
        let weights: Vec<(u64, f64)> = lp
            .basic_solution()
            .into_iter()
            .filter(|&(_, w)| w > 0.0)
            .map(|(a, w)| (a as u64, w))
            .collect();
        let total: f64 = weights.iter().map(|w| w.1).sum();
        let jpd = JointDistribution::new(n, weights.into_iter().map(|(a, w)| (a, w / total)))?;
        let dev = jpd.max_deviation(model)?;
        if dev > REPRODUCTION_TOL {
            return Err(Error::Numerical(format!(
                "joint distribution misses the model by {dev:e}"
            )));
        }
        return Ok(Membership::Inside { jpd });
    }

    let y = lp.duals();
    let scale = y.iter().fold(0.0f64, |s, v| s.max(v.abs()));
    let mut coefficients: Vec<Vec<f64>> =
        model.tables().iter().map(|t| vec![0.0; t.len()]).collect();
    for (i, &(k, o)) in rows.iter().enumerate() {
        coefficients[k][o] = y[i] / scale;
    }
    let mut inequality = GeneralInequality {
        coefficients,
        bound: 0.0,
    };
    inequality.bound = inequality.deterministic_max(model.scenario())?;
    let model_value = inequality.evaluate(model)?;
    if model_value <= inequality.bound + SEPARATION_TOL {
        return Err(Error::Numerical(format!(
            "dual functional does not separate: model {model_value}, bound {}",
            inequality.bound
        )));
    }
    Ok(Membership::Outside {
        certificate: Certificate {
            inequality,
            model_value,
        },
    })
}

/// Phase-one tableau for `A w = b, w ≥ 0` with one artificial per row.
struct Tableau {
    rows: usize,
    cols: usize,
    /// Row-major, `cols + rows + 1` entries per row; the last is the rhs.
    t: Vec<f64>,
    /// Reduced costs of all columns followed by minus the objective.
    cost: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(rows: usize, cols: usize) -> Tableau {
        let width = cols + rows + 1;
        let mut t = vec![0.0; rows * width];
        for i in 0..rows {
            t[i * width + cols + i] = 1.0;
        }
        Tableau {
            rows,
            cols,
            t,
            cost: vec![0.0; width],
            basis: (cols..cols + rows).collect(),
        }
    }

    fn width(&self) -> usize {
        self.cols + self.rows + 1
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        let w = self.width();
        self.t[i * w + j] = v;
    }

    fn set_rhs(&mut self, i: usize, v: f64) {
        let w = self.width();
        self.t[i * w + w - 1] = v;
    }

    /// Minimizes the sum of artificials.
    fn solve(&mut self) -> Result<()> {
        let w = self.width();
        for j in 0..w {
            if j >= self.cols && j < self.cols + self.rows {
                continue;
            }
            self.cost[j] = -(0..self.rows).map(|i| self.t[i * w + j]).sum::<f64>();
        }
        let max_iterations = 50 * (self.rows + self.cols) + 1000;
        let mut degenerate_run = 0;
        for _ in 0..max_iterations {
            let bland = degenerate_run > self.rows;
            let entering = if bland {
                (0..w - 1).find(|&j| self.cost[j] < -PIVOT_TOL)
            } else {
                (0..w - 1)
                    .filter(|&j| self.cost[j] < -PIVOT_TOL)
                    .min_by(|&a, &b| self.cost[a].total_cmp(&self.cost[b]))
            };
            let Some(j) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.t[i * w + j];
                if a > PIVOT_TOL {
                    let ratio = self.t[i * w + w - 1] / a;
                    let better = match leave {
                        None => true,
                        Some((l, r)) => {
                            ratio < r - 1e-15
                                || (ratio <= r + 1e-15 && self.basis[i] < self.basis[l])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((i, ratio)) = leave else {
                // Phase one is bounded below by zero, so this means round-off.
                return Err(Error::Numerical("unbounded phase-one direction".into()));
            };
            degenerate_run = if ratio <= 1e-15 {
                degenerate_run + 1
            } else {
                0
            };
            self.pivot(i, j);
        }
        Err(Error::NoConvergence(max_iterations))
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width();
        let p = self.t[r * w + c];
        for v in &mut self.t[r * w..(r + 1) * w] {
            *v /= p;
        }
        let pivot_row: Vec<f64> = self.t[r * w..(r + 1) * w].to_vec();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.t[i * w + c];
            if f != 0.0 {
                for (v, pr) in self.t[i * w..(i + 1) * w].iter_mut().zip(&pivot_row) {
                    *v -= f * pr;
                }
            }
        }
        let f = self.cost[c];
        if f != 0.0 {
            for (v, pr) in self.cost.iter_mut().zip(&pivot_row) {
                *v -= f * pr;
            }
        }
        self.basis[r] = c;
    }

    /// Sum of artificials at the current basis.
    fn objective(&self) -> f64 {
        -self.cost[self.width() - 1]
    }

    /// Values of the structural columns that are basic and positive.
    fn basic_solution(&self) -> Vec<(usize, f64)> {
        let w = self.width();
        self.basis
            .iter()
            .enumerate()
            .filter(|&(_, &j)| j < self.cols)
            .map(|(i, &j)| (j, self.t[i * w + w - 1].max(0.0)))
            .collect()
    }

    /// Phase-one duals `y`, read off the artificial columns' reduced costs
    /// (`1 - y_i`). At optimality `y·A_j ≤ 0` for every column and `y·b`
    /// equals the objective.
    fn duals(&self) -> Vec<f64> {
        (0..self.rows)
            .map(|i| 1.0 - self.cost[self.cols + i])
            .collect()
    }
}
