use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count mismatch: {0} vs {1}")]
    QubitMismatch(usize, usize),

    #[error("cannot parse Pauli string {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("realization is not faithful: {0}")]
    NotFaithful(String),

    #[error("edge-Pauli constraint violated: {0}")]
    Constraint(String),

    #[error("dimension overflow: {0} qubits exceeds the dense limit of {1}")]
    DimensionOverflow(usize, usize),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("eigensolver did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("no-disturbance violated between contexts {0:?} and {1:?} (deviation {2:e})")]
    Disturbance(Vec<usize>, Vec<usize>, f64),

    #[error("numerical check failed: {0}")]
    Numerical(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
