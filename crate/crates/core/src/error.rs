use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("linear system is underdetermined")]
    Underdetermined,

    #[error("input list is empty")]
    EmptyInput,

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("polyhedron is empty")]
    Empty,

    #[error("polytope is not full-dimensional")]
    NotFullDimensional,

    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("cone apex does not match the requested common apex")]
    ApexMismatch,

    #[error("vertex pair ({a}, {b}) is not a Minkowski vertex")]
    NotMinkowskiVertex { a: usize, b: usize },

    #[error("edge direction at pair ({a}, {b}) is parallel to no summand edge")]
    NoParallelEdge { a: usize, b: usize },

    #[error("polyhedral cap of vertex {anchor} is disconnected")]
    CapDisconnected { anchor: usize },

    #[error("primal traversal incomplete: {0}")]
    TraversalIncomplete(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
