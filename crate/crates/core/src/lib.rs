//! Uniform hypergraphs under minimum positive co-degree conditions.
//!
//! The crate provides the hypergraph model and degree parameters, generators
//! for the standard extremal constructions, exact solvers for spanning
//! structures (perfect matchings, Berge and loose Hamiltonian cycles,
//! tilings), constructive procedures that build those structures under
//! degree hypotheses, and a small lab for computing exact thresholds on
//! tiny vertex sets.
//!
//! Vertices are the integers `0..n`. Exact solvers use `u64` vertex masks,
//! so they accept at most 64 vertices.

pub mod certificates;
pub mod constructions;
pub mod error;
pub mod format;
pub mod hypergraph;
pub mod lab;
pub mod procedures;
pub mod solvers;

pub use certificates::{
    validate_berge_cycle, validate_loose_walk, validate_matching, BergeCycle, LooseWalk,
    Matching, Span, ValidationReport, WalkKind,
};
pub use constructions::{
    complete, loose_cycle_graph, make_huv, sample_with_floor, two_cliques, Construction,
    ConstructionSheet,
};
pub use error::{Error, Result};
pub use hypergraph::{codegree_prune, degree_profile, DegreeProfile, Edge, Hypergraph, Vertex};
pub use solvers::{SearchStats, SolveOptions, Verdict};

/// Version tag embedded in every serialized report.
pub const SCHEMA_VERSION: u32 = 1;
