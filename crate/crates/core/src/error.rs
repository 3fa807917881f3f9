use thiserror::Error;

/// Domain errors. Every variant is a typed outcome the CLI maps to exit code 1.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("infeasible: the inequality system has no solution")]
    Infeasible,
    #[error("not pointed: the polyhedron contains a line, so it has no vertices")]
    NotPointed,
    #[error("not full-dimensional: affine hull has dimension {dim} in ambient dimension {ambient}")]
    NotFullDimensional { dim: usize, ambient: usize },
    #[error("unbounded input where a bounded polytope is required")]
    Unbounded,
    #[error("inconsistent representation: vertex {vertex} violates row {row}")]
    Inconsistent { vertex: usize, row: usize },
    #[error("row {0} is redundant (not a facet)")]
    RedundantRow(usize),
    #[error("index {index} out of range (have {len})")]
    OutOfRange { index: usize, len: usize },
    #[error("vertex {0} is not simple")]
    NonSimpleVertex(usize),
    #[error("polytope is not simplicial")]
    NotSimplicial,
    #[error("polytope is not simple")]
    NotSimple,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("unknown label '{0}'")]
    UnknownLabel(String),
    #[error("non-unique optimum: vertices {0} and {1} share the maximum value")]
    NonUniqueOptimum(usize, usize),
    #[error("tie on edge {0}-{1}: the functional is constant along it")]
    TieOnEdge(usize, usize),
    #[error("{0}")]
    Io(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
