use thiserror::Error;

/// Errors produced by the simulation and measurement operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("step size must be positive and finite, got {0}")]
    InvalidStepSize(f64),

    #[error("need at least one integration step")]
    NoSteps,

    #[error("integration diverged: non-finite state after step {step} (t = {t}); dt is too large for this coupling and amplitude")]
    Diverged { step: usize, t: f64 },

    #[error("trajectory times must be strictly increasing")]
    UnsortedTimes,

    #[error("trajectory must contain at least one sample")]
    EmptyTrajectory,

    #[error("times and states have different lengths ({times} vs {states})")]
    LengthMismatch { times: usize, states: usize },

    #[error("fuzzy interval must be finite and >= 0, got {0}")]
    InvalidInterval(f64),

    #[error("component mask must name at least one component")]
    EmptyMask,

    #[error("component index {0} out of range (components are 1, 2, 3)")]
    BadComponent(usize),

    #[error("constant solution (r = 0) admits no phase shift; fuzzy interval must be 0")]
    ConstantSolutionFuzz,

    #[error("dimension cardinality must be at least 2, got {0}")]
    BadCardinality(usize),

    #[error("cell {cell:?} has coordinate {value} out of range for dimension {dim} (cardinality {cardinality})")]
    CellOutOfRange {
        cell: Vec<u16>,
        dim: usize,
        value: u16,
        cardinality: usize,
    },

    #[error("cell {cell:?} has {got} coordinates, expected {expected}")]
    CellArity {
        cell: Vec<u16>,
        got: usize,
        expected: usize,
    },

    #[error("negative count {count} at cell {cell:?}")]
    NegativeCount { cell: Vec<u16>, count: f64 },

    #[error("contingency table has zero total count")]
    ZeroTotal,

    #[error("dimension index {index} out of range for a table with {dims} dimensions")]
    DimIndexOutOfRange { index: usize, dims: usize },

    #[error("dimension indices must be distinct, got {0:?}")]
    DuplicateDims(Vec<usize>),

    #[error("entropy subset must be nonempty")]
    EmptySubset,

    #[error("subset of size {0} unsupported (expected 2, 3, or 4 dimensions)")]
    UnsupportedSubsetSize(usize),

    #[error("tables disagree on the dimension schema: {0}")]
    SchemaMismatch(String),

    #[error("years must be strictly increasing")]
    UnsortedYears,

    #[error("no contingency tables supplied")]
    NoTables,

    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("duplicate timestamp {0}")]
    DuplicateTimestamp(f64),

    #[error("need at least one Fourier term")]
    NoTerms,

    #[error("base angular frequency must be positive and finite, got {0}")]
    BadBaseFrequency(f64),

    #[error("least-squares solve failed: {0}")]
    LeastSquares(&'static str),
}
