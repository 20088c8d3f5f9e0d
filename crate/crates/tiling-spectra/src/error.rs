use thiserror::Error;

/// Errors produced by graph construction, I/O and the spectral operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown lattice `{0}`")]
    UnknownLattice(String),

    #[error("weight class `{0}` has no assigned weight")]
    MissingWeightClass(String),

    #[error("weight class `{class}` must be strictly positive and finite, got {value}")]
    NonPositiveWeight { class: String, value: f64 },

    #[error("unexpected weight class `{0}` not present in the graph")]
    UnexpectedWeightClass(String),

    #[error("vertex index {index} out of range for a graph with {n_vertices} vertices")]
    VertexIndexOutOfRange { index: usize, n_vertices: usize },

    #[error("duplicate edge class ({tail}, {head}, [{b1}, {b2}])")]
    DuplicateEdge { tail: usize, head: usize, b1: i32, b2: i32 },

    #[error("vertex {0} has no incident edges")]
    IsolatedVertex(usize),

    #[error("cyclic order at vertex {vertex} is missing or does not list its incident edges")]
    BadCyclicOrder { vertex: usize },

    #[error("vertex weights are not constant (min {min}, max {max})")]
    NonConstantVertexWeight { min: f64, max: f64 },

    #[error("the constant-vertex-weight constraint system has no solution (residual {residual:e})")]
    InconsistentConstraints { residual: f64 },

    #[error("grid size must be at least 3, got {0}")]
    GridTooSmall(usize),

    #[error("torus size must be at least 3, got {0}")]
    TorusTooSmall(usize),

    #[error("{name} = {value} outside the open interval ({lo}, {hi})")]
    ParameterOutOfRange { name: &'static str, value: f64, lo: f64, hi: f64 },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("lattice `{0}` is not supported by this operation")]
    UnsupportedLattice(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed file: {0}")]
    Malformed(#[from] serde_json::Error),
}
