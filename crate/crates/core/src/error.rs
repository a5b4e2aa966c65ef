use thiserror::Error;

use crate::color::Color;
use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
}

/// Precondition failures of coloring operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("palette of {palette} colors is smaller than the maximum degree {max_degree}")]
    PaletteTooSmall { palette: usize, max_degree: usize },
    #[error("color {0} is outside the palette")]
    ColorOutOfRange(Color),
    #[error("expected {expected} link colors, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("edge {edge} is not incident to vertex {vertex}")]
    NotIncident { edge: EdgeId, vertex: VertexId },
    #[error("an exchange needs two distinct edges, got {0} twice")]
    SameEdge(EdgeId),
    #[error("color {color} is present at vertex {vertex}")]
    ColorPresent { vertex: VertexId, color: Color },
    #[error("edge {0} is not a variable")]
    NotVariable(EdgeId),
    #[error("color {color} does not occur on link {edge}@{vertex}")]
    ColorNotOnLink { edge: EdgeId, vertex: VertexId, color: Color },
    #[error("edges {0} and {1} are not adjacent")]
    NotAdjacent(EdgeId, EdgeId),
    #[error("path is no longer maximal in the current configuration")]
    StalePath,
    #[error("move classification no longer matches the configuration")]
    StaleClassification,
    #[error("move is blocked")]
    Blocked,
    #[error("invalid step budget request: n_i={n_i}, k={k}, m={m}")]
    InvalidBudget { n_i: usize, k: usize, m: usize },
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `p edge N M` header")]
    MissingHeader,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("infeasible instance: {0}")]
    Infeasible(String),
    #[error("could not build a simple {degree}-regular graph on {n} vertices after {attempts} attempts")]
    RetriesExhausted { n: usize, degree: usize, attempts: usize },
    #[error("unrecognized instance spec `{0}`")]
    BadSpec(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
