use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit index {qubit} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("CNOT control and target are both qubit {0}")]
    SameControlTarget(usize),

    #[error("rotation angle must be finite, got {0}")]
    NonFiniteAngle(f64),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("register of {0} qubits is too large for a dense operator")]
    TooLargeForDense(usize),

    #[error("register must have at least one qubit")]
    EmptyRegister,

    #[error("bit value {0} is not 0 or 1")]
    InvalidBit(u8),

    #[error("shot count must be positive")]
    NoShots,

    #[error("trajectory count must be positive")]
    NoTrajectories,

    #[error("step count must be positive")]
    NoSteps,

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("probability {name} = {value} is outside [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },

    #[error("operator is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("counts are empty")]
    EmptyCounts,

    #[error("time grids differ")]
    GridMismatch,

    #[error("scaling fit needs at least 3 points, got {0}")]
    TooFewPoints(usize),

    #[error("scaling fit needs strictly positive values, got {0}")]
    NonPositive(f64),

    #[error("times must be ascending and non-negative")]
    InvalidTimes,
}

pub type Result<T> = std::result::Result<T, Error>;
