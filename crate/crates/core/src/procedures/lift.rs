//! Berge Hamiltonian cycles by induction on the uniformity.
//!
//! For r ≥ 3 the procedure finds a Berge Hamiltonian cycle v₁ e′₁ … v_n e′_n
//! of the shadow graph (recursively, down to a graph handled by
//! [`dirac_cycle`]) and then extends every (r−1)-edge e′_i to an r-edge
//! e_i = e′_i ∪ {w} of the host. The added vertex w must avoid the cycle
//! neighbors of every vertex of e′_i, at most 2r−4 vertices, so that e_i
//! contains at most one of v_j, v_{j+1} for every j ≠ i. That strengthened
//! property keeps the e_i distinct and carries the induction. Indices are
//! read cyclically, so j = n pairs v_n with v₁.

use serde::{Deserialize, Serialize};

use super::dirac::dirac_cycle;
use super::StageFailure;
use crate::certificates::{validate_berge_cycle, BergeCycle, Span};
use crate::error::{Error, Result};
use crate::hypergraph::{degree_profile, Hypergraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftOutcome {
    /// n ≥ 6r−10, no isolated vertices and 2·δ⁺ ≥ n − 2r + 4.
    pub hypotheses_met: bool,
    pub cycle: Option<BergeCycle>,
    /// True when the returned cycle satisfies the strengthened property.
    pub strengthened: bool,
    pub stage_log: Vec<String>,
    pub failure: Option<StageFailure>,
}

pub fn lift_hypotheses(h: &Hypergraph) -> bool {
    let (n, r) = (h.n(), h.r());
    let p = degree_profile(h);
    n + 10 >= 6 * r && p.isolated.is_empty() && 2 * p.delta_pos_codeg + 2 * r >= n + 4
}

pub fn berge_lift(h: &Hypergraph) -> Result<LiftOutcome> {
    if h.r() < 2 {
        return Err(Error::InvalidUniformity(h.r()));
    }
    let mut outcome = LiftOutcome {
        hypotheses_met: lift_hypotheses(h),
        cycle: None,
        strengthened: false,
        stage_log: Vec::new(),
        failure: None,
    };
    if h.n() < 3 {
        outcome.failure = Some(StageFailure::new("input", "fewer than 3 vertices"));
        return Ok(outcome);
    }
    match lift_level(h, &mut outcome.stage_log) {
        Ok(cycle) => {
            let report = validate_berge_cycle(h, &cycle, Span::Spanning);
            if report.valid {
                outcome.strengthened = cycle.has_strengthened_property();
                outcome.cycle = Some(cycle);
            } else {
                outcome.failure = Some(StageFailure::new("validate", report.violations.join("; ")));
            }
        }
        Err(failure) => outcome.failure = Some(failure),
    }
    Ok(outcome)
}

fn lift_level(h: &Hypergraph, log: &mut Vec<String>) -> std::result::Result<BergeCycle, StageFailure> {
    let r = h.r();
    if r == 2 {
        let cycle = dirac_cycle(h)
            .map_err(|e| StageFailure::new("base case", e.to_string()))?
            .ok_or_else(|| StageFailure::new("base case", "no Hamiltonian cycle found in the graph"))?;
        log.push(format!("r=2: graph cycle on {} vertices", cycle.len()));
        return Ok(cycle);
    }
    let shadow = h.shadow_graph().expect("r >= 3");
    log.push(format!(
        "r={r}: shadow has {} edges, δ⁺ = {}",
        shadow.edge_count(),
        degree_profile(&shadow).delta_pos_codeg
    ));
    let lower = lift_level(&shadow, log)?;
    if !lower.has_strengthened_property() {
        log.push(format!("r={}: cycle lacks the strengthened property", r - 1));
    }
    let n = lower.len();
    let position: Vec<usize> = {
        let mut pos = vec![0; h.n()];
        for (i, &v) in lower.vertices.iter().enumerate() {
            pos[v] = i;
        }
        pos
    };
    let mut edges = Vec::with_capacity(n);
    for (i, e) in lower.edges.iter().enumerate() {
        let mut forbidden = vec![false; h.n()];
        for &v in e {
            let k = position[v];
            forbidden[lower.vertices[(k + n - 1) % n]] = true;
            forbidden[lower.vertices[(k + 1) % n]] = true;
        }
        let candidates = h.codegree_neighborhood(e).expect("shadow edge has size r-1");
        let Some(w) = candidates.into_iter().find(|&w| !forbidden[w]) else {
            return Err(StageFailure::new(
                format!("extension r={r}"),
                format!("edge {i} {e:?} has no admissible extension vertex"),
            ));
        };
        let mut lifted = e.clone();
        lifted.push(w);
        lifted.sort_unstable();
        edges.push(lifted);
    }
    log.push(format!("r={r}: extended {n} edges"));
    Ok(BergeCycle {
        vertices: lower.vertices,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, make_huv, sample_with_floor};
    use crate::solvers::find_berge_hamiltonian_cycle;

    #[test]
    fn complete_lifts() {
        let h = complete(3, 8).unwrap();
        let out = berge_lift(&h).unwrap();
        assert!(out.hypotheses_met);
        let c = out.cycle.unwrap();
        assert!(validate_berge_cycle(&h, &c, Span::Spanning).valid);
        assert!(out.strengthened);

        let h = complete(4, 14).unwrap();
        let out = berge_lift(&h).unwrap();
        assert!(out.hypotheses_met && out.strengthened);
    }

    #[test]
    fn graph_delegates() {
        let g = complete(2, 6).unwrap();
        let out = berge_lift(&g).unwrap();
        assert!(out.cycle.is_some());
        assert_eq!(out.stage_log.len(), 1);
    }

    #[test]
    fn construction_fails() {
        let (h, _) = make_huv(3, 8, 5).unwrap();
        let out = berge_lift(&h).unwrap();
        assert!(!out.hypotheses_met);
        assert!(out.cycle.is_none());
        assert!(out.failure.is_some());
        assert!(find_berge_hamiltonian_cycle(&h).is_none());
    }

    #[test]
    fn sampled_regime() {
        let mut checked = 0;
        for seed in 0..150 {
            let n = 8 + (seed as usize % 5);
            let t = n.div_ceil(2) - 1;
            let p = if seed % 2 == 0 { 0.7 } else { 0.8 };
            let h = sample_with_floor(3, n, t, p, seed).unwrap();
            if !lift_hypotheses(&h) {
                continue;
            }
            checked += 1;
            let out = berge_lift(&h).unwrap();
            let c = out.cycle.unwrap_or_else(|| panic!("seed {seed}: {:?}", out.failure));
            assert!(validate_berge_cycle(&h, &c, Span::Spanning).valid);
            assert!(out.strengthened);
        }
        assert!(checked > 20, "only {checked} instances in the regime");
    }
}
