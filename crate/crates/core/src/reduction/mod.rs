//! The grid gadget built from a cubic graph.
//!
//! A cubic graph on `n` vertices becomes a permutation multigraph made of one
//! grid per source vertex, two large grids `L` and `R`, and a middle grid `M`.
//! Grids are implicit: vertex ids are computed from component offsets, and the
//! red and green Hamiltonian paths are stored as runs along rows and columns.
//! Only edges between grids are stored explicitly.

mod arrangement;
mod cubic;
mod gadget;
mod grid;
mod sweep;
mod verify;

pub use arrangement::{
    canonical_arrangement, CanonicalArrangement, ExplicitArrangement, GadgetArrangement,
};
pub use cubic::{min_bisection_brute, Bisection, CubicGraph, BISECTION_LIMIT};
pub use gadget::{
    build_gadget, build_gadget_with_cap, Component, ComponentKind, EdgeKind, EdgeLocation,
    ExternalEdge, GadgetInstance, GadgetManifest, Node, PathColor, Run, FAITHFUL_SCALE, MEMORY_ENV,
};
pub use grid::{build_composed_grid, build_grid, ComposedGrid};
pub use sweep::{sweep_max_width, sweep_profile, ComponentWidth, SweepReport};
pub use verify::{
    edge_coloring, gadget_multigraph, gadget_to_permutation, red_ranks, verify_gadget,
    CheckOutcome, EdgeColoring, VerificationReport, EXPLICIT_SCALE_LIMIT,
};

use crate::multigraph::GraphError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("a cubic graph needs an even number of vertices, got {0}")]
    OddOrder(usize),
    #[error("not a simple cubic graph: {0}")]
    NotCubic(String),
    #[error("invalid bisection: {0}")]
    InvalidBisection(String),
    #[error("size limit: {0}")]
    SizeLimit(String),
    #[error("scale exponent must be in 1..=4, got {0}")]
    ScaleOutOfRange(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("estimated memory {needed_mb} MiB exceeds the cap of {cap_mb} MiB")]
    MemoryCap { needed_mb: u64, cap_mb: u64 },
    #[error("gadget failed verification: {0}")]
    Unverified(String),
    #[error("arrangement covers {arrangement} positions but the gadget has {vertices} vertices")]
    ArrangementMismatch { arrangement: u64, vertices: u64 },
    #[error("{0}")]
    Graph(#[from] GraphError),
}
