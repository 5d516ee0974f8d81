use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("invalid partition {parts:?}: {reason}")]
    InvalidPartition { parts: Vec<usize>, reason: String },

    #[error("partitions of different integers: {0} vs {1}")]
    UnequalSizes(usize, usize),

    #[error("invalid pyramid: {0}")]
    InvalidPyramid(String),

    #[error("{lambda} does not cover {mu}")]
    NotACover { lambda: String, mu: String },

    #[error("element is not homogeneous for the grading")]
    NotHomogeneous,

    #[error("linear system has no unique solution: {0}")]
    SingularSystem(String),

    #[error("degenerate symplectic form on g_-1")]
    DegenerateForm,

    #[error("subspace is not Lagrangian: {0}")]
    NotLagrangian(String),

    #[error("polynomial variable sets differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),

    #[error("polynomial parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("constraint matrix is singular at the sample point")]
    SingularConstraints,

    #[error("interpolation failed: {0}")]
    Interpolation(String),

    #[error("point is not on the constraint surface: {0}")]
    NotOnSurface(String),

    #[error("canonicalization failed: {0}")]
    Canonicalization(String),

    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
