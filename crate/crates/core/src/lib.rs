//! Interval edge colorings of bipartite cylinders `C(m, 2n) = P_m × C_2n` and
//! bipartite tori `T(2m, 2n) = C_2m × C_2n`.
//!
//! - [`graph`]: grid-addressed graph families and queries
//! - [`coloring`]: edge colorings and the interval-coloring verifier
//! - [`constructions`]: explicit large-palette colorings and step-down recoloring
//! - [`bounds`]: lower and upper bounds on the palette, tabulated
//! - [`search`]: exhaustive backtracking oracle for small instances
//! - [`format`]: JSON, DOT and CSV formats
//! - [`cli`]: the `meshcolor` command line

pub mod bounds;
pub mod cli;
pub mod coloring;
pub mod constructions;
pub mod format;
pub mod graph;
pub mod search;

pub use coloring::{verify_interval, Color, EdgeColoring, SpectrumReport};
pub use constructions::{cylinder_coloring, spectrum_sweep, step_down, torus_coloring, ConstructionResult, MeshFamily};
pub use graph::{Edge, GridVertex, MeshGraph};
