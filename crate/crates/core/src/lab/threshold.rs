//! Exact minimum-positive-co-degree thresholds on small vertex sets.
//!
//! Every examined hypergraph without isolated vertices is solved once and
//! grouped by its δ⁺. The threshold is one more than the largest δ⁺ of an
//! instance lacking the structure; that instance is kept as the witness.
//! Under exhaustive enumeration the value is exact unless some solver
//! returned unknown above it, in which case a bracket is reported. Sampling
//! only certifies the lower end.

use std::collections::BTreeMap;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_hypergraphs, exhaustive_supported, Mode};
use crate::error::{Error, Result};
use crate::hypergraph::{degree_profile, Edge, Hypergraph};
use crate::solvers::{solve_structure, SolveOptions, Structure, Verdict};
use crate::SCHEMA_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdConfig {
    pub seed: u64,
    /// Samples per co-degree floor in sampled mode.
    pub samples_per_floor: usize,
    /// Sample even when exhaustive enumeration is available.
    pub force_sampling: bool,
    /// Per-instance solver deadline.
    pub deadline: Option<Duration>,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples_per_floor: 50,
            force_sampling: false,
            deadline: None,
        }
    }
}

/// A stored hypergraph lacking the structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub r: usize,
    pub n: usize,
    pub edges: Vec<Edge>,
    pub delta_pos: usize,
}

impl Witness {
    pub fn from_hypergraph(h: &Hypergraph) -> Self {
        Self {
            r: h.r(),
            n: h.n(),
            edges: h.edges().to_vec(),
            delta_pos: degree_profile(h).delta_pos_codeg,
        }
    }

    pub fn hypergraph(&self) -> Result<Hypergraph> {
        Hypergraph::new(self.r, self.n, self.edges.clone())
    }
}

/// Instances examined at one δ⁺ value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCount {
    pub delta_pos: usize,
    pub examined: u64,
    pub with_structure: u64,
    pub without: u64,
    pub unknown: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub schema_version: u32,
    pub r: usize,
    pub n: usize,
    pub structure: Structure,
    pub method: Method,
    pub seed: u64,
    /// Set when every examined instance at or above the lower end has the
    /// structure and the enumeration was exhaustive.
    pub exact_threshold: Option<usize>,
    pub threshold_lower: usize,
    /// Absent under sampling, which gives no upper guarantee.
    pub threshold_upper: Option<usize>,
    /// δ⁺ = threshold_lower − 1, no isolated vertices, structure absent.
    pub extremal_witness: Option<Witness>,
    pub instance_counts: Vec<LevelCount>,
}

impl ThresholdReport {
    /// Rebuilds the witness and checks its δ⁺, that it has no isolated
    /// vertices, and that the exact solver still finds no structure.
    pub fn witness_revalidates(&self) -> Result<bool> {
        let Some(w) = &self.extremal_witness else {
            return Ok(false);
        };
        let h = w.hypergraph()?;
        let p = degree_profile(&h);
        let solved = solve_structure(&h, self.structure, &SolveOptions::default())?;
        Ok(p.isolated.is_empty()
            && p.delta_pos_codeg == w.delta_pos
            && w.delta_pos + 1 == self.threshold_lower
            && solved.verdict == Verdict::No)
    }
}

/// Refuses vertex counts where the spanning structure cannot exist for
/// divisibility reasons.
pub fn check_feasible(r: usize, n: usize, structure: Structure) -> Result<()> {
    let bad = |why: String| Err(Error::InvalidParameter(why));
    match structure {
        Structure::PerfectMatching if !n.is_multiple_of(r) => bad(format!("a perfect matching needs r | n, got r = {r}, n = {n}")),
        Structure::LooseHc if r < 2 || !n.is_multiple_of(r - 1) || n / (r - 1) < if r == 2 { 3 } else { 2 } => {
            bad(format!("a loose Hamiltonian cycle needs (r - 1) | n with room for two edges, got r = {r}, n = {n}"))
        }
        Structure::BergeHc if n < 3 => bad(format!("a Hamiltonian cycle needs at least 3 vertices, got {n}")),
        Structure::C43Tiling if r != 3 || !n.is_multiple_of(4) => {
            bad(format!("a spanning C43 tiling needs r = 3 and 4 | n, got r = {r}, n = {n}"))
        }
        _ => Ok(()),
    }
}

pub fn exact_threshold(r: usize, n: usize, structure: Structure, cfg: &ThresholdConfig) -> Result<ThresholdReport> {
    check_feasible(r, n, structure)?;
    let exhaustive = exhaustive_supported(r, n) && !cfg.force_sampling;
    let mut instances = Vec::new();
    if exhaustive {
        enumerate_hypergraphs(r, n, 0, Mode::Exhaustive, |h| instances.push(h.clone()))?;
    } else {
        let top = n.saturating_sub(r) + 1;
        for t in 1..=top {
            let mode = Mode::Sampled {
                samples: cfg.samples_per_floor,
                seed: cfg.seed.wrapping_add(t as u64),
            };
            enumerate_hypergraphs(r, n, t, mode, |h| instances.push(h.clone()))?;
        }
    }
    let opts = SolveOptions {
        deadline: cfg.deadline,
        force: false,
    };
    let verdicts: Vec<(usize, Verdict<()>)> = instances
        .par_iter()
        .map(|h| {
            let d = degree_profile(h).delta_pos_codeg;
            let v = match solve_structure(h, structure, &opts)?.verdict {
                Verdict::Yes(_) => Verdict::Yes(()),
                Verdict::No => Verdict::No,
                Verdict::Unknown => Verdict::Unknown,
            };
            Ok((d, v))
        })
        .collect::<Result<_>>()?;

    let mut levels: BTreeMap<usize, LevelCount> = BTreeMap::new();
    let mut witness: Option<(usize, usize)> = None;
    for (i, (d, v)) in verdicts.iter().enumerate() {
        let level = levels.entry(*d).or_insert(LevelCount {
            delta_pos: *d,
            ..Default::default()
        });
        level.examined += 1;
        match v {
            Verdict::Yes(()) => level.with_structure += 1,
            Verdict::No => {
                level.without += 1;
                if witness.is_none_or(|(wd, _)| *d > wd) {
                    witness = Some((*d, i));
                }
            }
            Verdict::Unknown => level.unknown += 1,
        }
    }
    let lower = witness.map_or(0, |(d, _)| d + 1);
    let unknown_above = levels
        .values()
        .filter(|l| l.delta_pos >= lower && l.unknown > 0)
        .map(|l| l.delta_pos)
        .max();
    let upper = match (exhaustive, unknown_above) {
        (false, _) => None,
        (true, None) => Some(lower),
        (true, Some(u)) => Some(u + 1),
    };
    Ok(ThresholdReport {
        schema_version: SCHEMA_VERSION,
        r,
        n,
        structure,
        method: if exhaustive { Method::Exhaustive } else { Method::Sampled },
        seed: cfg.seed,
        exact_threshold: upper.filter(|&u| u == lower),
        threshold_lower: lower,
        threshold_upper: upper,
        extremal_witness: witness.map(|(_, i)| Witness::from_hypergraph(&instances[i])),
        instance_counts: levels.into_values().collect(),
    })
}
