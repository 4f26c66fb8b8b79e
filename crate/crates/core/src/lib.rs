//! Exact partial domination for graphs and their prisms.
//!
//! A prism `πG` joins two copies of a graph `G` with the perfect matching
//! `v ↦ π(v)`. This crate builds prisms, computes domination numbers and
//! p-domination numbers exactly (branch and bound, cross-checked by a brute
//! force oracle), sweeps permutations to classify universal fixers and
//! doublers, and machine-checks a family of statements relating `γ_p(G)` and
//! `γ_p(πG)`.

pub mod error;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod prism;
pub mod proportion;
pub mod solver;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Family, Graph, VertexSet};
pub use prism::{Permutation, PrismGraph};
pub use proportion::Proportion;
pub use solver::{CoverageProfile, Solution};
