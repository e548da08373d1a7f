use thiserror::Error;

/// Errors produced by graph construction, sampling, analysis, and the
/// experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for partition of size {size}")]
    VertexOutOfRange { vertex: usize, size: usize },

    #[error("duplicate edge ({u}, {w})")]
    DuplicateEdge { u: usize, w: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("probability {0} outside [0, 1]")]
    ProbabilityRange(f64),

    #[error("edge index space {n1} x {n2} overflows u64")]
    IndexOverflow { n1: usize, n2: usize },

    #[error(
        "cycle enumeration work limit exceeded ({visited} states, ceiling {ceiling}); shrink j"
    )]
    WorkLimitExceeded { visited: u64, ceiling: u64 },

    #[error("rotation-system search space {states:.3e} exceeds ceiling {ceiling:.3e}")]
    RotationCeiling { states: f64, ceiling: f64 },

    #[error("{what} overflows the result type")]
    Overflow { what: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("{failed} of {total} trials failed (limit 1%); first error: {first}")]
    TooManyTrialErrors {
        failed: usize,
        total: usize,
        first: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
