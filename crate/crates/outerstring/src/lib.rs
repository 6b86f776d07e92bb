//! Grounded-string arrangements and the algorithms they support.
//!
//! A grounded string is a curve in the upper half-plane with exactly one
//! endpoint on the x-axis (the ground). This crate builds exact planar
//! arrangements of such strings, computes crossing-levels and their level
//! regions, measures sparsity of the intersection graphs (degeneracy,
//! Nash-Williams arboricity, biclique-freeness), searches for clique minors,
//! constructs tree decompositions, and runs a suite of exact dynamic
//! programming and branching solvers for NP-hard problems on those graphs,
//! each backed by a brute-force oracle.
//!
//! Start with the `examples/` directory for runnable tours of each
//! capability, or the `outerstring` binary for the command-line interface.

pub mod arrangement;
pub mod construct;
pub mod geom;
pub mod graph;
pub mod solvers;
pub mod treewidth;

pub use geom::{Point, Q};
pub use graph::Graph;
