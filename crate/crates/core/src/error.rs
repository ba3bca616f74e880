use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("at most {max} vertices are supported, got {n}")]
    TooManyVertices { n: usize, max: usize },

    #[error("vertex set must be nonempty")]
    EmptyVertexSet,

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(usize, usize),

    #[error("label table has {got} entries but the graph has {n} vertices")]
    LabelLength { got: usize, n: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("expected a subset of size {expected}, got {got}")]
    WrongSubsetSize { expected: usize, got: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("monomial has {got} variables, ideal has {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ideal is not squarefree")]
    NotSquarefree,

    #[error("ideal has no single generating degree")]
    NotPure,

    #[error("computation refused: {0}")]
    Blowup(String),

    #[error("malformed input: {0}")]
    Format(String),
}
