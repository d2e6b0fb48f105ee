use thiserror::Error;

use crate::stabcode::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitRange { index: usize, n: usize },

    #[error("supports overlap on qubit {0}")]
    OverlappingSupports(usize),

    #[error("invalid Pauli string {input:?}: {reason}")]
    PauliParse { input: String, reason: String },

    #[error("line {line}: {reason}")]
    CodeParse { line: usize, reason: String },

    #[error("invalid code: {0}")]
    InvalidCode(Violation),

    #[error("operator {0} is not in the normalizer")]
    NotInNormalizer(String),

    #[error("unknown code {0:?}")]
    UnknownCode(String),

    #[error("index {index} out of range (k = {k})")]
    LogicalIndex { index: usize, k: usize },

    #[error("{what}: {count} exceeds budget {budget}")]
    Budget { what: &'static str, count: u128, budget: u128 },

    #[error("{what} needs {n} qubits, above the dense cap of {cap}")]
    DenseCap { what: &'static str, n: usize, cap: usize },

    #[error("damping rate {0} outside [0, 1]")]
    Gamma(f64),

    #[error("not a density matrix: {0}")]
    NotDensity(String),

    #[error("state has weight {0:e} outside the code space")]
    OutsideCodeSpace(f64),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("{0}")]
    Precondition(String),
}
