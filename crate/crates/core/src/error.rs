use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("algebra mismatch: operands live in different division algebras")]
    SpecMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("element has zero reduced norm and is not invertible (split quaternion algebra?)")]
    NonInvertible,

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("gram matrix is not {0}-Hermitian")]
    NotHermitian(i32),

    #[error("gram matrix is degenerate")]
    Degenerate,

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("tableau is not admissible for epsilon = {0}")]
    Inadmissible(i32),

    #[error("size violation: dim Vtilde - dim V - #rows = {0} < 0")]
    SizeViolation(i64),

    #[error("invalid sl2-triple: {0}")]
    InvalidTriple(String),

    #[error("element outside the required subspace: {0}")]
    NotInSubspace(String),

    #[error("dual pair is not in the stable range: {0}")]
    NotStableRange(String),

    #[error("invalid dual pair: {0}")]
    InvalidPair(String),

    #[error("element is not in the centralizer group: {0}")]
    NotInCentralizer(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
