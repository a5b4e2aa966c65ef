//! Edge coloring with complex colors: configurations whose edges may carry
//! a different color at each end, Kempe walks that cancel such variables,
//! and directional walks that carry them across the graph.

pub mod bench;
pub mod budget;
pub mod color;
pub mod config;
pub mod dimacs;
pub mod directional;
pub mod error;
pub mod generate;
pub mod graph;
pub mod kempe;
pub mod report;
pub mod solver;
pub mod trace;
pub mod tree;

pub use color::{Color, ComplexColor};
pub use config::{Configuration, Counters};
pub use error::{ColoringError, GraphError, InstanceError, ParseError};
pub use graph::{EdgeId, Link, SimpleGraph, VertexId};
pub use solver::{color_with_fallback, solve, Algorithm, Palette, RunReport, SolveOptions, Verdict};
