//! Maximum and perfect matchings by exact search over vertex masks.

use std::collections::{HashMap, HashSet};

use super::{check_mask_limit, full_mask, Budget, SolveOptions, Solved, Verdict};
use crate::certificates::Matching;
use crate::error::Result;
use crate::hypergraph::Hypergraph;

/// A perfect matching if one exists. Panics if n > 64.
pub fn has_perfect_matching(h: &Hypergraph) -> Option<Matching> {
    has_perfect_matching_with(h, &SolveOptions::default())
        .expect("instance within the 64-vertex limit")
        .verdict
        .into_option()
}

/// A maximum matching. Panics if n > 64.
pub fn max_matching(h: &Hypergraph) -> Matching {
    match max_matching_with(h, &SolveOptions::default())
        .expect("instance within the 64-vertex limit")
        .verdict
    {
        Verdict::Yes(m) => m,
        _ => unreachable!("no deadline was set"),
    }
}

/// Exact cover search: repeatedly cover the uncovered vertex with the fewest
/// available edges, memoizing covered masks that are known to fail.
pub fn has_perfect_matching_with(h: &Hypergraph, opts: &SolveOptions) -> Result<Solved<Matching>> {
    check_mask_limit(h, "perfect matching")?;
    let mut budget = Budget::new(opts.deadline);
    let n = h.n();
    if !n.is_multiple_of(h.r()) {
        return Ok(Solved {
            verdict: Verdict::No,
            stats: budget.stats(),
        });
    }
    let masks = h.edge_masks();
    let mut search = CoverSearch {
        masks: &masks,
        by_vertex: (0..n).map(|v| h.incident_edges(v).to_vec()).collect(),
        failed: HashSet::new(),
        chosen: Vec::new(),
        budget: &mut budget,
        full: full_mask(n),
    };
    let found = search.cover(0);
    let verdict = match found {
        None => Verdict::Unknown,
        Some(false) => Verdict::No,
        Some(true) => Verdict::Yes(Matching::new(
            search.chosen.iter().map(|&i| h.edges()[i].clone()).collect(),
        )),
    };
    Ok(Solved {
        verdict,
        stats: budget.stats(),
    })
}

struct CoverSearch<'a> {
    masks: &'a [u64],
    by_vertex: Vec<Vec<usize>>,
    failed: HashSet<u64>,
    chosen: Vec<usize>,
    budget: &'a mut Budget,
    full: u64,
}

impl CoverSearch<'_> {
    /// Some(found) on completion, None on timeout.
    fn cover(&mut self, covered: u64) -> Option<bool> {
        if covered == self.full {
            return Some(true);
        }
        if !self.budget.tick() {
            return None;
        }
        if self.failed.contains(&covered) {
            return Some(false);
        }
        let mut best: Option<(usize, usize)> = None;
        let mut rest = self.full & !covered;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let options = self.by_vertex[v]
                .iter()
                .filter(|&&i| self.masks[i] & covered == 0)
                .count();
            if best.is_none_or(|(_, c)| options < c) {
                best = Some((v, options));
                if options == 0 {
                    break;
                }
            }
        }
        let (v, _) = best.expect("uncovered vertex exists");
        for idx in 0..self.by_vertex[v].len() {
            let i = self.by_vertex[v][idx];
            if self.masks[i] & covered != 0 {
                continue;
            }
            self.chosen.push(i);
            match self.cover(covered | self.masks[i]) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.chosen.pop();
        }
        self.failed.insert(covered);
        Some(false)
    }
}

/// Maximum matching by memoized search over decided-vertex masks.
pub fn max_matching_with(h: &Hypergraph, opts: &SolveOptions) -> Result<Solved<Matching>> {
    check_mask_limit(h, "maximum matching")?;
    let mut budget = Budget::new(opts.deadline);
    let masks = h.edge_masks();
    let chosen = max_packing(h.n(), &masks, h.r(), &mut budget);
    let verdict = match chosen {
        Some(idx) => Verdict::Yes(Matching::new(idx.into_iter().map(|i| h.edges()[i].clone()).collect())),
        None => Verdict::Unknown,
    };
    Ok(Solved {
        verdict,
        stats: budget.stats(),
    })
}

/// Maximum family of pairwise disjoint sets, each of size `set_size`.
///
/// Returns indices into `sets`, or None if the budget expired. The lowest
/// undecided vertex is either covered by some set or left out; the best
/// value of each decided mask is memoized.
pub(crate) fn max_packing(
    n: usize,
    sets: &[u64],
    set_size: usize,
    budget: &mut Budget,
) -> Option<Vec<usize>> {
    let mut by_vertex = vec![Vec::new(); n];
    for (i, &m) in sets.iter().enumerate() {
        let mut rest = m;
        while rest != 0 {
            by_vertex[rest.trailing_zeros() as usize].push(i);
            rest &= rest - 1;
        }
    }
    let mut packer = Packer {
        sets,
        set_size: set_size.max(1),
        by_vertex,
        memo: HashMap::new(),
        full: full_mask(n),
        budget,
    };
    packer.best(0)?;
    let mut decided = 0u64;
    let mut chosen = Vec::new();
    loop {
        let value = packer.memo[&decided];
        if value == 0 {
            break;
        }
        let v = (packer.full & !decided).trailing_zeros() as usize;
        let pick = packer.by_vertex[v].iter().copied().find(|&i| {
            sets[i] & decided == 0
                && packer.memo.get(&(decided | sets[i])).is_some_and(|&b| b + 1 == value)
        });
        match pick {
            Some(i) => {
                chosen.push(i);
                decided |= sets[i];
            }
            None => decided |= 1u64 << v,
        }
    }
    Some(chosen)
}

struct Packer<'a> {
    sets: &'a [u64],
    set_size: usize,
    by_vertex: Vec<Vec<usize>>,
    memo: HashMap<u64, usize>,
    full: u64,
    budget: &'a mut Budget,
}

impl Packer<'_> {
    fn best(&mut self, decided: u64) -> Option<usize> {
        if let Some(&b) = self.memo.get(&decided) {
            return Some(b);
        }
        let undecided = self.full & !decided;
        if undecided == 0 {
            self.memo.insert(decided, 0);
            return Some(0);
        }
        if !self.budget.tick() {
            return None;
        }
        let bound = undecided.count_ones() as usize / self.set_size;
        let v = undecided.trailing_zeros() as usize;
        let mut best = 0;
        for idx in 0..self.by_vertex[v].len() {
            if best == bound {
                break;
            }
            let i = self.by_vertex[v][idx];
            if self.sets[i] & decided == 0 {
                best = best.max(1 + self.best(decided | self.sets[i])?);
            }
        }
        if best < bound {
            best = best.max(self.best(decided | (1u64 << v))?);
        }
        self.memo.insert(decided, best);
        Some(best)
    }
}
