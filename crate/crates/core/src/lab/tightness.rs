//! Tightness checks: each degree condition against the H_{U,V}
//! construction sitting just below it, and against sampled instances at or
//! above it.
//!
//! | id      | structure      | r       | condition on δ⁺           | construction |
//! |---------|----------------|---------|---------------------------|--------------|
//! | `berge` | Berge HC       | any     | δ⁺ ≥ n/2 − r + 2          | \|V\| = ⌈(n+1)/2⌉ |
//! | `loose` | loose HC       | 3       | δ⁺ ≥ n/2 (plus o(n))      | \|V\| = n/2 + 1 |
//! | `pm3`   | perfect match. | 3       | δ⁺ ≥ 2n/3 − 1             | \|V\| = n/3 + 1 |
//! | `pmr`   | perfect match. | any     | δ⁺ ≥ ((r−1)/r)·n + r²     | \|V\| = n/r + 1 |
//!
//! Discrepancies are listed per row and never suppressed.

use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_hypergraphs, Mode};
use super::threshold::check_feasible;
use crate::constructions::make_huv;
use crate::error::{Error, Result};
use crate::hypergraph::{degree_profile, Hypergraph};
use crate::solvers::{solve_structure, SolveOptions, Structure};
use crate::SCHEMA_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    Berge,
    Loose,
    Pm3,
    Pmr,
}

impl TheoremId {
    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Berge => "berge",
            TheoremId::Loose => "loose",
            TheoremId::Pm3 => "pm3",
            TheoremId::Pmr => "pmr",
        }
    }

    pub fn structure(self) -> Structure {
        match self {
            TheoremId::Berge => Structure::BergeHc,
            TheoremId::Loose => Structure::LooseHc,
            TheoremId::Pm3 | TheoremId::Pmr => Structure::PerfectMatching,
        }
    }

    /// The uniformity used when none is given.
    pub fn default_r(self) -> usize {
        match self {
            TheoremId::Pmr => 4,
            _ => 3,
        }
    }

    /// The real-valued lower bound on δ⁺.
    pub fn bound(self, r: usize, n: usize) -> f64 {
        let (r, n) = (r as f64, n as f64);
        match self {
            TheoremId::Berge => n / 2.0 - r + 2.0,
            TheoremId::Loose => n / 2.0,
            TheoremId::Pm3 => 2.0 * n / 3.0 - 1.0,
            TheoremId::Pmr => (r - 1.0) / r * n + r * r,
        }
    }

    /// |V| of the construction just below the bound.
    fn construction_v(self, r: usize, n: usize) -> usize {
        match self {
            TheoremId::Berge => (n + 2) / 2,
            TheoremId::Loose => n / 2 + 1,
            TheoremId::Pm3 | TheoremId::Pmr => n / r + 1,
        }
    }
}

impl std::str::FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "berge" => TheoremId::Berge,
            "loose" => TheoremId::Loose,
            "pm3" => TheoremId::Pm3,
            "pmr" => TheoremId::Pmr,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown theorem id `{other}`; expected berge, loose, pm3 or pmr"
                )))
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TightnessConfig {
    pub r: Option<usize>,
    pub seed: u64,
    /// Samples drawn per n.
    pub samples: usize,
    /// Per-instance solver deadline.
    pub deadline: Option<Duration>,
}

impl Default for TightnessConfig {
    fn default() -> Self {
        Self {
            r: None,
            seed: 0,
            samples: 40,
            deadline: Some(Duration::from_secs(10)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TightnessRow {
    pub r: usize,
    pub n: usize,
    /// Set when the row was not evaluated, e.g. for infeasible n.
    pub skipped: Option<String>,
    pub construction: String,
    pub construction_delta_pos: usize,
    /// Verdict of the exact solver on the construction.
    pub construction_verdict: String,
    pub bound: f64,
    /// Smallest integer δ⁺ meeting the bound.
    pub threshold: usize,
    /// No r-graph on n vertices has δ⁺ ≥ threshold.
    pub regime_empty: bool,
    pub samples_examined: u64,
    pub samples_with_structure: u64,
    pub samples_without: u64,
    pub samples_unknown: u64,
    pub discrepancies: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TightnessReport {
    pub schema_version: u32,
    pub theorem: TheoremId,
    pub structure: Structure,
    pub seed: u64,
    pub rows: Vec<TightnessRow>,
}

impl TightnessReport {
    pub fn discrepancy_count(&self) -> usize {
        self.rows.iter().map(|r| r.discrepancies.len()).sum()
    }
}

pub fn tightness_report(theorem: TheoremId, ns: &[usize], cfg: &TightnessConfig) -> Result<TightnessReport> {
    let r = cfg.r.unwrap_or_else(|| theorem.default_r());
    if matches!(theorem, TheoremId::Loose | TheoremId::Pm3) && r != 3 {
        return Err(Error::WrongUniformity { expected: 3, found: r });
    }
    if r < 2 {
        return Err(Error::InvalidUniformity(r));
    }
    let rows = ns
        .iter()
        .map(|&n| row(theorem, r, n, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(TightnessReport {
        schema_version: SCHEMA_VERSION,
        theorem,
        structure: theorem.structure(),
        seed: cfg.seed,
        rows,
    })
}

fn verdict_label(h: &Hypergraph, s: Structure, opts: &SolveOptions) -> Result<&'static str> {
    match solve_structure(h, s, opts) {
        Ok(solved) => Ok(solved.verdict.label()),
        Err(Error::TooLarge { .. }) => Ok("unknown"),
        Err(e) => Err(e),
    }
}

fn row(theorem: TheoremId, r: usize, n: usize, cfg: &TightnessConfig) -> Result<TightnessRow> {
    let structure = theorem.structure();
    let bound = theorem.bound(r, n);
    let threshold = bound.ceil().max(0.0) as usize;
    let mut row = TightnessRow {
        r,
        n,
        skipped: None,
        construction: String::new(),
        construction_delta_pos: 0,
        construction_verdict: "unknown".into(),
        bound,
        threshold,
        regime_empty: n < r || threshold > n - r + 1,
        samples_examined: 0,
        samples_with_structure: 0,
        samples_without: 0,
        samples_unknown: 0,
        discrepancies: Vec::new(),
    };
    if let Err(e) = check_feasible(r, n, structure) {
        row.skipped = Some(e.to_string());
        return Ok(row);
    }
    let opts = SolveOptions {
        deadline: cfg.deadline,
        force: false,
    };

    let v = theorem.construction_v(r, n);
    match make_huv(r, n, v) {
        Ok((h, _)) => {
            row.construction = format!("huv_{r}_{n}_{v}");
            row.construction_delta_pos = degree_profile(&h).delta_pos_codeg;
            row.construction_verdict = verdict_label(&h, structure, &opts)?.into();
            if row.construction_delta_pos >= threshold {
                row.discrepancies.push(format!(
                    "construction has δ⁺ = {} at or above the threshold {threshold}",
                    row.construction_delta_pos
                ));
            }
            if row.construction_verdict == "yes" {
                row.discrepancies.push("construction contains the structure".into());
            }
        }
        Err(e) => row.construction = format!("unavailable: {e}"),
    }

    if row.regime_empty {
        return Ok(row);
    }
    let mut samples = Vec::new();
    let mode = Mode::Sampled {
        samples: cfg.samples,
        seed: cfg.seed ^ (n as u64) << 32,
    };
    enumerate_hypergraphs(r, n, threshold, mode, |h| samples.push(h.clone()))?;
    let labels: Vec<&'static str> = samples
        .par_iter()
        .map(|h| verdict_label(h, structure, &opts))
        .collect::<Result<_>>()?;
    for (i, label) in labels.iter().enumerate() {
        row.samples_examined += 1;
        match *label {
            "yes" => row.samples_with_structure += 1,
            "no" => {
                row.samples_without += 1;
                row.discrepancies.push(format!(
                    "sample {i} with δ⁺ = {} lacks the structure",
                    degree_profile(&samples[i]).delta_pos_codeg
                ));
            }
            _ => row.samples_unknown += 1,
        }
    }
    Ok(row)
}
