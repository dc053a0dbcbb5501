//! Multi-qubit Pauli realizations of cycle measurement scenarios and their
//! contextuality analysis.
//!
//! - [`pauli`]: the Pauli group in binary symplectic form with exact phases.
//! - [`graph`]: compatibility graphs, scenarios, chordality and induced cycles.
//! - [`realization`]: faithful realizations, edge-Pauli checks and constructions.
//! - [`search`]: backtracking search for cycle and path realizations.
//! - [`spectral`]: dense matrices, eigen-analysis, states and quantum models.
//! - [`contextuality`]: inequalities, `Γ` analysis, polytope membership, gluing.
//! - [`report`]: JSON run reports shared by the command-line tool.

pub mod contextuality;
pub mod error;
pub mod graph;
pub mod pauli;
pub mod realization;
pub mod report;
pub mod search;
pub mod spectral;

pub use error::{Error, Result};
