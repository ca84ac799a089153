use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid tensor shape: order {order}, dimension {dim}")]
    InvalidShape { order: usize, dim: usize },

    #[error("index {index:?} is out of range for dimension {dim}")]
    IndexOutOfRange { index: Vec<usize>, dim: usize },

    #[error("index {index:?} has {got} components, expected {order}")]
    IndexArity { index: Vec<usize>, order: usize, got: usize },

    #[error("matrix is not exactly orthogonal")]
    NotOrthogonal,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("tensor is irregular")]
    Irregular,

    #[error("every variable ordering of the Macaulay construction degenerates")]
    DegenerateSystem,

    #[error("internal identity violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
