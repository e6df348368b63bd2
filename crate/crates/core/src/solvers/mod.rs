//! Exact solvers for spanning structures.
//!
//! All solvers work on `u64` vertex masks and so accept at most 64 vertices.
//! Each has a plain entry point that searches to completion and a `_with`
//! variant taking [`SolveOptions`], which adds a deadline and the size
//! guardrails and reports a three-valued [`Verdict`].

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::certificates::{BergeCycle, LooseWalk, Matching};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

pub mod berge;
pub mod bipartite;
pub mod loose;
pub mod matching;
pub mod tiling;

pub use berge::{find_berge_hamiltonian_cycle, find_berge_hamiltonian_cycle_with};
pub use bipartite::{x_saturating_matching, BipartiteGraph, HallWitness, Saturation};
pub use loose::{find_loose_hamiltonian_cycle, find_loose_hamiltonian_cycle_with};
pub use matching::{has_perfect_matching, has_perfect_matching_with, max_matching, max_matching_with};
pub use tiling::{
    best_path_tiling, best_path_tiling_with, max_c43_tiling, max_c43_tiling_with,
    validate_tiling, C43Copy, Tile, TileKind, Tiling,
};

/// Largest vertex count any bitmask solver accepts.
pub const MAX_VERTICES: usize = 64;
/// Cycle solvers refuse larger instances unless forced.
pub const CYCLE_LIMIT: usize = 24;
/// Tiling solvers switch to heuristics above this size unless forced.
pub const TILING_LIMIT: usize = 15;
/// Path tiling is exhaustive up to this size without forcing.
pub const PATH_TILING_EXHAUSTIVE: usize = 12;

/// The spanning structures the solvers and the lab know about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Structure {
    PerfectMatching,
    BergeHc,
    LooseHc,
    C43Tiling,
    PathTiling,
}

impl Structure {
    pub fn name(self) -> &'static str {
        match self {
            Structure::PerfectMatching => "pm",
            Structure::BergeHc => "berge-hc",
            Structure::LooseHc => "loose-hc",
            Structure::C43Tiling => "c43-tiling",
            Structure::PathTiling => "path-tiling",
        }
    }
}

impl std::str::FromStr for Structure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "pm" | "perfect-matching" => Structure::PerfectMatching,
            "berge-hc" | "hamiltonian-cycle" | "hc" => Structure::BergeHc,
            "loose-hc" => Structure::LooseHc,
            "c43-tiling" => Structure::C43Tiling,
            "path-tiling" => Structure::PathTiling,
            other => return Err(Error::InvalidParameter(format!("unknown structure `{other}`"))),
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    pub deadline: Option<Duration>,
    /// Lift the size guardrails.
    pub force: bool,
}

impl SolveOptions {
    pub fn with_deadline(deadline: Duration) -> Self {
        Self {
            deadline: Some(deadline),
            force: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer", content = "certificate", rename_all = "kebab-case")]
pub enum Verdict<T> {
    Yes(T),
    No,
    Unknown,
}

impl<T> Verdict<T> {
    pub fn into_option(self) -> Option<T> {
        match self {
            Verdict::Yes(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    }
}

/// A verdict together with the search effort spent on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solved<T> {
    pub verdict: Verdict<T>,
    pub stats: SearchStats,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub timed_out: bool,
}

/// Node counter with an optional wall-clock deadline, polled every 1024 nodes.
pub(crate) struct Budget {
    start: Instant,
    limit: Option<Duration>,
    pub(crate) nodes: u64,
    pub(crate) expired: bool,
}

impl Budget {
    pub(crate) fn new(limit: Option<Duration>) -> Self {
        Self {
            start: Instant::now(),
            limit,
            nodes: 0,
            expired: false,
        }
    }

    /// Counts one node; returns false once the deadline has passed.
    pub(crate) fn tick(&mut self) -> bool {
        self.nodes += 1;
        if !self.expired && self.nodes.is_multiple_of(1024) {
            if let Some(limit) = self.limit {
                self.expired = self.start.elapsed() >= limit;
            }
        }
        !self.expired
    }

    pub(crate) fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes,
            timed_out: self.expired,
        }
    }
}

/// A certificate for any of the [`Structure`] kinds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Certificate {
    Matching(Matching),
    BergeCycle(BergeCycle),
    LooseCycle(LooseWalk),
    Tiling(Tiling),
}

/// Decides whether `h` contains the spanning version of `structure`: a
/// perfect matching, a Hamiltonian Berge or loose cycle, a C₄³ tiling
/// covering every vertex, or a single loose path covering every vertex.
pub fn solve_structure(h: &Hypergraph, structure: Structure, opts: &SolveOptions) -> Result<Solved<Certificate>> {
    fn wrap<T>(s: Solved<T>, f: impl FnOnce(T) -> Certificate) -> Solved<Certificate> {
        let verdict = match s.verdict {
            Verdict::Yes(t) => Verdict::Yes(f(t)),
            Verdict::No => Verdict::No,
            Verdict::Unknown => Verdict::Unknown,
        };
        Solved { verdict, stats: s.stats }
    }
    let spanning_tiling = |t: Tiling, stats: SearchStats| {
        let verdict = if t.uncovered.is_empty() {
            Verdict::Yes(Certificate::Tiling(t))
        } else if t.certified_optimal {
            Verdict::No
        } else {
            Verdict::Unknown
        };
        Solved { verdict, stats }
    };
    Ok(match structure {
        Structure::PerfectMatching => wrap(has_perfect_matching_with(h, opts)?, Certificate::Matching),
        Structure::BergeHc => wrap(find_berge_hamiltonian_cycle_with(h, opts)?, Certificate::BergeCycle),
        Structure::LooseHc => wrap(find_loose_hamiltonian_cycle_with(h, opts)?, Certificate::LooseCycle),
        Structure::C43Tiling => {
            let (t, stats) = max_c43_tiling_with(h, opts)?;
            spanning_tiling(t, stats)
        }
        Structure::PathTiling => {
            let (t, stats) = best_path_tiling_with(h, 1, opts)?;
            spanning_tiling(t, stats)
        }
    })
}

pub(crate) fn check_mask_limit(h: &Hypergraph, what: &'static str) -> Result<()> {
    if h.n() > MAX_VERTICES {
        return Err(Error::TooLarge {
            what,
            n: h.n(),
            limit: MAX_VERTICES,
        });
    }
    Ok(())
}

pub(crate) fn check_cycle_limit(h: &Hypergraph, opts: &SolveOptions, what: &'static str) -> Result<()> {
    check_mask_limit(h, what)?;
    if h.n() > CYCLE_LIMIT && !opts.force {
        return Err(Error::TooLarge {
            what,
            n: h.n(),
            limit: CYCLE_LIMIT,
        });
    }
    Ok(())
}

#[inline]
pub(crate) fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |m, &v| m | (1u64 << v))
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn mask_vertices(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}
