//! Error type shared across the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building models, states or estimates.
///
/// Scalar payloads are stored as f64 regardless of the working precision so
/// the enum stays non-generic.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("parameter `{name}` = {value} violates constraint: {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("error sequence must contain at least one label")]
    EmptySequence,

    #[error("sequence length {len} exceeds the enumeration cap of {max}")]
    SequenceTooLong { len: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("dimension {dim} is not a power of two covering at least one qubit")]
    InvalidDimension { dim: usize },

    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("qubit index {index} listed more than once")]
    DuplicateQubit { index: usize },

    #[error("state vector norm {norm} deviates from 1 beyond tolerance")]
    NotNormalized { norm: f64 },

    #[error("matrix is not Hermitian (max deviation {deviation})")]
    NotHermitian { deviation: f64 },

    #[error("matrix trace {trace} deviates from 1 beyond tolerance")]
    NotUnitTrace { trace: f64 },

    #[error("matrix has eigenvalue {eigenvalue} below the positivity floor")]
    NotPositive { eigenvalue: f64 },

    #[error("operator is not unitary (max deviation {deviation} from U^dag U = I)")]
    NotUnitary { deviation: f64 },

    #[error("ancilla qubits must be prepared in |0>, found amplitude on an excited ancilla state")]
    AncillaNotGround,

    #[error("unknown code name `{0}`; expected one of: uncoded, c1, c2")]
    UnknownCode(String),

    #[error("partial trace must keep at least one qubit")]
    EmptyKeep,

    #[error("Monte Carlo estimation needs at least {min} samples, got {n}")]
    TooFewSamples { n: usize, min: usize },
}
