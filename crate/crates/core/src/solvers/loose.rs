//! Loose Hamiltonian cycles by backtracking over edge sequences.
//!
//! Vertex 0 is the first junction. From the current junction the search picks
//! an edge whose other r−1 vertices are unused and one of them as the next
//! junction; the last edge must return to vertex 0. Reversal symmetry is
//! broken by requiring the second junction to have a smaller label than the
//! last one. Failed (second junction, current junction, unused set) states
//! are memoized.

use std::collections::HashSet;

use super::{check_cycle_limit, full_mask, mask_vertices, Budget, SolveOptions, Solved, Verdict};
use crate::certificates::LooseWalk;
use crate::error::Result;
use crate::hypergraph::Hypergraph;

/// A loose Hamiltonian cycle if one exists. Panics above the size guardrail.
pub fn find_loose_hamiltonian_cycle(h: &Hypergraph) -> Option<LooseWalk> {
    find_loose_hamiltonian_cycle_with(h, &SolveOptions::default())
        .expect("instance within the cycle-solver guardrail")
        .verdict
        .into_option()
}

pub fn find_loose_hamiltonian_cycle_with(
    h: &Hypergraph,
    opts: &SolveOptions,
) -> Result<Solved<LooseWalk>> {
    check_cycle_limit(h, opts, "loose cycle search")?;
    let mut budget = Budget::new(opts.deadline);
    let (n, r) = (h.n(), h.r());
    let step = r.saturating_sub(1);
    let feasible_size = step > 0 && n % step == 0 && n / step >= if r == 2 { 3 } else { 2 };
    if !feasible_size || h.has_isolated_vertex() {
        return Ok(Solved {
            verdict: Verdict::No,
            stats: budget.stats(),
        });
    }
    let mut search = LooseSearch {
        h,
        r,
        masks: h.edge_masks(),
        failed: HashSet::new(),
        trail: Vec::new(),
        budget: &mut budget,
    };
    let unused = full_mask(n) & !1;
    let verdict = match search.extend(None, 0, unused) {
        None => Verdict::Unknown,
        Some(false) => Verdict::No,
        Some(true) => Verdict::Yes(search.certificate()),
    };
    Ok(Solved {
        verdict,
        stats: budget.stats(),
    })
}

struct LooseSearch<'a> {
    h: &'a Hypergraph,
    r: usize,
    masks: Vec<u64>,
    failed: HashSet<(usize, usize, u64)>,
    /// (edge index, next junction) for every edge placed so far.
    trail: Vec<(usize, usize)>,
    budget: &'a mut Budget,
}

impl LooseSearch<'_> {
    fn extend(&mut self, second: Option<usize>, cur: usize, unused: u64) -> Option<bool> {
        if !self.budget.tick() {
            return None;
        }
        let remaining = unused.count_ones() as usize;
        if remaining + 2 == self.r {
            return Some(self.close(second, cur, unused));
        }
        let key = (second.unwrap_or(usize::MAX), cur, unused);
        if self.failed.contains(&key) || !self.coverable(cur, unused) {
            return Some(false);
        }
        for idx in 0..self.h.incident_edges(cur).len() {
            let e = self.h.incident_edges(cur)[idx];
            let rest = self.masks[e] & !(1u64 << cur);
            if rest & !unused != 0 {
                continue;
            }
            let next_unused = unused & !rest;
            for next in mask_vertices(rest) {
                self.trail.push((e, next));
                let found = self.extend(second.or(Some(next)), next, next_unused)?;
                if found {
                    return Some(true);
                }
                self.trail.pop();
            }
        }
        self.failed.insert(key);
        Some(false)
    }

    fn close(&mut self, second: Option<usize>, cur: usize, unused: u64) -> bool {
        let closing = unused | (1u64 << cur) | 1;
        let orientation_ok = self.trail.len() < 2 || second.is_some_and(|s| s < cur);
        if !orientation_ok {
            return false;
        }
        let found = self
            .h
            .incident_edges(cur)
            .iter()
            .copied()
            .find(|&e| self.masks[e] == closing);
        match found {
            Some(e) => {
                self.trail.push((e, 0));
                true
            }
            None => false,
        }
    }

    /// Every unused vertex still lies in an edge avoiding used vertices other
    /// than the current junction and vertex 0.
    fn coverable(&self, cur: usize, unused: u64) -> bool {
        let allowed = unused | (1u64 << cur) | 1;
        mask_vertices(unused).into_iter().all(|u| {
            self.h
                .incident_edges(u)
                .iter()
                .any(|&e| self.masks[e] & !allowed == 0)
        })
    }

    fn certificate(&self) -> LooseWalk {
        let mut vertices = vec![0];
        let mut cur = 0;
        for &(e, next) in &self.trail {
            vertices.extend(
                self.h.edges()[e]
                    .iter()
                    .copied()
                    .filter(|&v| v != cur && v != next),
            );
            if next != 0 {
                vertices.push(next);
            }
            cur = next;
        }
        LooseWalk::cycle(self.r, vertices)
    }
}
