//! Minimum (1,j)-sets: sets `D` in which every vertex outside `D` has at
//! least one and at most `j` neighbours inside.
//!
//! * [`graph`]: graphs, parsing, recognition of trees, chordal and split
//!   graphs, and seeded generators;
//! * [`oracle`]: the verifier and exact exponential solvers;
//! * [`tree`]: linear-time dynamic program for trees with per-vertex bands;
//! * [`split`]: polynomial solver and gamma = n test for split graphs;
//! * [`lll`]: local-lemma bounds and a resampling constructor;
//! * [`reduction`]: hardness reduction from exact cover by 3-sets.

pub mod graph;
pub mod lll;
pub mod oracle;
pub mod reduction;
pub mod rng;
pub mod split;
pub mod tree;

pub use graph::Graph;
pub use oracle::{Band, Witness};
