use thiserror::Error;

use crate::quiver::VertexId;

/// Errors produced by quiver, tableau, seed, folding and kinematics routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {0} does not exist")]
    UnknownVertex(VertexId),

    #[error("cannot mutate at frozen vertex {0}")]
    FrozenVertex(VertexId),

    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),

    #[error("tableaux have different row counts ({0} vs {1})")]
    RowCountMismatch(usize, usize),

    #[error("tableaux have different shapes")]
    ShapeMismatch,

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("tableau is not a factor of the dividend")]
    NotAFactor,

    #[error("in- and out-unions at vertex {0} are incomparable in the dominance order")]
    Incomparable(VertexId),

    #[error("invalid Grassmannian parameters k={k}, n={n}: {reason}")]
    InvalidParameters { k: usize, n: usize, reason: String },

    #[error("position ({0},{1}) is not a vertex")]
    PositionOutOfRange(usize, usize),

    #[error("mutation step {step} (vertex {vertex}): {source}")]
    Step {
        step: usize,
        vertex: VertexId,
        #[source]
        source: Box<Error>,
    },

    #[error("label is not a single column; numeric evaluation is unsupported")]
    MultiColumn,

    #[error("expected {expected} indices, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("degenerate Pluecker symbol with indices {0:?}")]
    DegenerateSymbol(Vec<i64>),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("diagnostic failed: {0}")]
    Diagnostic(String),

    #[error("degenerate kinematic sample: {0}")]
    DegenerateSample(String),

    #[error("sampler gave up after {0} attempts")]
    SamplingFailed(usize),

    #[error("dual-coordinate closure residual {0:e} exceeds tolerance")]
    Closure(f64),

    #[error("check is not applicable: {0}")]
    Inapplicable(&'static str),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
