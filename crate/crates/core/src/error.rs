use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("qubit range {start}..{end} out of bounds for {n} qubits")]
    OutOfRange { start: usize, end: usize, n: usize },

    #[error("unsupported gate: {0}")]
    UnsupportedGate(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("paulis {0} and {1} do not commute")]
    NonCommuting(usize, usize),

    #[error("pauli set is not independent: some non-empty subset multiplies to +-I")]
    DependentSet,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{n} qubits exceeds the dense oracle cap of {cap}")]
    QubitCapExceeded { n: usize, cap: usize },

    #[error("{m} rotations exceeds the exhaustive search cap of {cap}")]
    RotationCapExceeded { m: usize, cap: usize },

    #[error("edit plan entry {0} does not name a T or T* gate")]
    InvalidPlan(usize),

    #[error("{available} ancillas cannot make a layer of {needed} rotations independent")]
    TooFewAncillas { needed: usize, available: usize },

    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
}
