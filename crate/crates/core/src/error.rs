use thiserror::Error;

use crate::medium::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("matrix is not hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("density matrix has trace {0}, expected 1")]
    BadTrace(f64),

    #[error("invalid targets {targets:?} for a {num_qubits}-qubit state")]
    BadTargets {
        targets: Vec<usize>,
        num_qubits: usize,
    },

    #[error("qubit subset must not be empty")]
    EmptySubset,

    #[error("unsupported observable: {0}")]
    UnsupportedObservable(String),

    #[error("invalid medium: {}", format_violations(.0))]
    InvalidMedium(Vec<Violation>),

    #[error("invalid fault path: {0}")]
    InvalidFaultPath(String),

    #[error("{sites} fault sites exceed the enumeration cap of {cap}")]
    TooManyFaultSites { sites: usize, cap: usize },

    #[error("merged cluster of {size} qubits exceeds the cluster cap of {cap}")]
    ClusterCapExceeded { size: usize, cap: usize },

    #[error("dense cap exceeded: {n} qubits, cap is {cap}")]
    DenseCapExceeded { n: usize, cap: usize },

    #[error("outcome probabilities sum to {0}, expected 1")]
    ProbabilityDrift(f64),

    #[error("input has {got} bits, expected {expected}")]
    InputLength { got: usize, expected: usize },

    #[error("qubit {0} is not live")]
    QubitNotLive(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed circuit document: {0}")]
    Format(String),
}

impl Error {
    /// True for failures caused by the size of the simulated state rather than bad input.
    pub fn is_resource_exhaustion(&self) -> bool {
        matches!(
            self,
            Error::ClusterCapExceeded { .. } | Error::DenseCapExceeded { .. }
        )
    }
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
