//! Vertex-disjoint tilings by C₄³ copies and by loose paths.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::matching::max_packing;
use super::{
    check_mask_limit, full_mask, mask_of, mask_vertices, Budget, SearchStats, SolveOptions,
    PATH_TILING_EXHAUSTIVE, TILING_LIMIT,
};
use crate::certificates::{validate_loose_walk, LooseWalk, Span, ValidationReport};
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TileKind {
    LoosePath,
    C43,
}

/// A copy of C₄³: two host edges sharing exactly two vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C43Copy {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl C43Copy {
    /// The copy spanned by two edges, if they share exactly two vertices.
    pub fn from_edges(a: &[Vertex], b: &[Vertex]) -> Option<Self> {
        let shared = a.iter().filter(|v| b.contains(v)).count();
        if a.len() != 3 || b.len() != 3 || shared != 2 {
            return None;
        }
        let mut vertices: Vec<Vertex> = a.iter().chain(b).copied().collect();
        vertices.sort_unstable();
        vertices.dedup();
        let mut edges = vec![a.to_vec(), b.to_vec()];
        for e in &mut edges {
            e.sort_unstable();
        }
        edges.sort();
        Some(Self { vertices, edges })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Tile {
    Path(LooseWalk),
    C43(C43Copy),
}

impl Tile {
    pub fn vertices(&self) -> &[Vertex] {
        match self {
            Tile::Path(w) => &w.vertices,
            Tile::C43(c) => &c.vertices,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tiling {
    pub kind: TileKind,
    pub members: Vec<Tile>,
    pub uncovered: Vec<Vertex>,
    /// False when the tiling came from a heuristic and is only a bound.
    pub certified_optimal: bool,
}

impl Tiling {
    pub fn new(h: &Hypergraph, kind: TileKind, members: Vec<Tile>, certified_optimal: bool) -> Self {
        let mut covered = vec![false; h.n()];
        for t in &members {
            for &v in t.vertices() {
                covered[v] = true;
            }
        }
        let uncovered = (0..h.n()).filter(|&v| !covered[v]).collect();
        Self {
            kind,
            members,
            uncovered,
            certified_optimal,
        }
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// At most α·n vertices left uncovered.
    pub fn is_alpha_deficient(&self, alpha: f64, n: usize) -> bool {
        self.uncovered.len() as f64 <= alpha * n as f64
    }
}

pub fn validate_tiling(h: &Hypergraph, t: &Tiling) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen = vec![false; h.n()];
    for (i, tile) in t.members.iter().enumerate() {
        match (t.kind, tile) {
            (TileKind::LoosePath, Tile::Path(w)) => {
                for v in validate_loose_walk(h, w, Span::Any).violations {
                    violations.push(format!("member {i}: {v}"));
                }
            }
            (TileKind::C43, Tile::C43(c)) => {
                let valid_shape = c.edges.len() == 2
                    && C43Copy::from_edges(&c.edges[0], &c.edges[1])
                        .is_some_and(|copy| copy.vertices == c.vertices);
                if !valid_shape {
                    violations.push(format!("member {i}: not a C43 copy"));
                }
                for e in &c.edges {
                    if !h.contains_edge(e) {
                        violations.push(format!("member {i}: non-edge {e:?}"));
                    }
                }
            }
            _ => violations.push(format!("member {i}: wrong tile kind")),
        }
        for &v in tile.vertices() {
            if v >= h.n() {
                violations.push(format!("member {i}: vertex {v} out of range"));
            } else if std::mem::replace(&mut seen[v], true) {
                violations.push(format!("vertex {v} covered twice"));
            }
        }
    }
    let uncovered: Vec<Vertex> = (0..h.n()).filter(|&v| !seen[v]).collect();
    if uncovered != t.uncovered {
        violations.push("uncovered set does not match the members".into());
    }
    ValidationReport {
        valid: violations.is_empty(),
        violations,
    }
}

/// Every 4-set spanning a C₄³, with the lexicographically first edge pair.
pub(crate) fn c43_candidates(h: &Hypergraph) -> Vec<C43Copy> {
    let masks = h.edge_masks();
    let mut by_mask: HashMap<u64, C43Copy> = HashMap::new();
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            if (masks[i] & masks[j]).count_ones() == 2 {
                by_mask
                    .entry(masks[i] | masks[j])
                    .or_insert_with(|| {
                        C43Copy::from_edges(&h.edges()[i], &h.edges()[j]).expect("two shared vertices")
                    });
            }
        }
    }
    let mut out: Vec<C43Copy> = by_mask.into_values().collect();
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}

fn require_three(h: &Hypergraph) -> Result<()> {
    check_mask_limit(h, "tiling search")?;
    if h.r() != 3 {
        return Err(Error::WrongUniformity {
            expected: 3,
            found: h.r(),
        });
    }
    Ok(())
}

/// Maximum number of vertex-disjoint C₄³ copies.
pub fn max_c43_tiling(h: &Hypergraph) -> Result<Tiling> {
    max_c43_tiling_with(h, &SolveOptions::default()).map(|(t, _)| t)
}

/// Exhaustive up to the tiling guardrail (or always when forced); above it,
/// or when the deadline expires, a greedy packing marked as a bound.
pub fn max_c43_tiling_with(h: &Hypergraph, opts: &SolveOptions) -> Result<(Tiling, SearchStats)> {
    require_three(h)?;
    let candidates = c43_candidates(h);
    let masks: Vec<u64> = candidates.iter().map(|c| mask_of(&c.vertices)).collect();
    let mut budget = Budget::new(opts.deadline);
    let exact = if h.n() <= TILING_LIMIT || opts.force {
        max_packing(h.n(), &masks, 4, &mut budget)
    } else {
        None
    };
    let (chosen, certified) = match exact {
        Some(chosen) => (chosen, true),
        None => {
            let mut used = 0u64;
            let mut chosen = Vec::new();
            for (i, &m) in masks.iter().enumerate() {
                if m & used == 0 {
                    used |= m;
                    chosen.push(i);
                }
            }
            (chosen, false)
        }
    };
    let members = chosen
        .into_iter()
        .map(|i| Tile::C43(candidates[i].clone()))
        .collect();
    Ok((Tiling::new(h, TileKind::C43, members, certified), budget.stats()))
}

/// A tiling by at most `max_paths` loose paths leaving the fewest vertices uncovered.
pub fn best_path_tiling(h: &Hypergraph, max_paths: usize) -> Result<Tiling> {
    best_path_tiling_with(h, max_paths, &SolveOptions::default()).map(|(t, _)| t)
}

/// Exhaustive memoized search for n ≤ 12 (n ≤ 20 when forced); greedy path
/// growth with several start rules otherwise, marked as a bound.
pub fn best_path_tiling_with(
    h: &Hypergraph,
    max_paths: usize,
    opts: &SolveOptions,
) -> Result<(Tiling, SearchStats)> {
    check_mask_limit(h, "path tiling")?;
    if h.r() < 2 {
        return Err(Error::InvalidUniformity(h.r()));
    }
    if max_paths == 0 {
        return Err(Error::InvalidParameter("max_paths must be at least 1".into()));
    }
    let mut budget = Budget::new(opts.deadline);
    let exhaustive = h.n() <= PATH_TILING_EXHAUSTIVE || (opts.force && h.n() <= 20);
    let exact = if exhaustive {
        PathDp::new(h, &mut budget).solve(max_paths.min(h.n() / h.r()))
    } else {
        None
    };
    let (paths, certified) = match exact {
        Some(paths) => (paths, true),
        None => (greedy_paths(h, max_paths), false),
    };
    let members = paths
        .into_iter()
        .map(|p| Tile::Path(LooseWalk::path(h.r(), p)))
        .collect();
    Ok((Tiling::new(h, TileKind::LoosePath, members, certified), budget.stats()))
}

#[derive(Clone, Copy)]
enum Step {
    Stop,
    Start { edge: usize, end: usize },
    Extend { edge: usize, next: usize },
}

const NO_END: usize = usize::MAX;

/// Memoized maximum coverage. A state is (used vertices, open path end or
/// none, paths still allowed); its value is the most further vertices that
/// can be covered.
struct PathDp<'a> {
    h: &'a Hypergraph,
    masks: Vec<u64>,
    memo: HashMap<(u64, usize, usize), (usize, Step)>,
    full: u64,
    budget: &'a mut Budget,
}

impl<'a> PathDp<'a> {
    fn new(h: &'a Hypergraph, budget: &'a mut Budget) -> Self {
        Self {
            h,
            masks: h.edge_masks(),
            memo: HashMap::new(),
            full: full_mask(h.n()),
            budget,
        }
    }

    fn value(&mut self, used: u64, end: usize, paths: usize) -> Option<usize> {
        let key = (used, end, paths);
        if let Some(&(v, _)) = self.memo.get(&key) {
            return Some(v);
        }
        if !self.budget.tick() {
            return None;
        }
        let bound = (self.full & !used).count_ones() as usize;
        let mut best = (0, Step::Stop);
        if end == NO_END {
            if paths > 0 {
                'edges: for e in 0..self.masks.len() {
                    if self.masks[e] & used != 0 {
                        continue;
                    }
                    for w in mask_vertices(self.masks[e]) {
                        if best.0 == bound {
                            break 'edges;
                        }
                        let v = self.h.r() + self.value(used | self.masks[e], w, paths - 1)?;
                        if v > best.0 {
                            best = (v, Step::Start { edge: e, end: w });
                        }
                    }
                }
            }
        } else {
            best = (self.value(used, NO_END, paths)?, Step::Stop);
            'edges: for idx in 0..self.h.incident_edges(end).len() {
                let e = self.h.incident_edges(end)[idx];
                let rest = self.masks[e] & !(1u64 << end);
                if rest & used != 0 {
                    continue;
                }
                for w in mask_vertices(rest) {
                    if best.0 == bound {
                        break 'edges;
                    }
                    let v = self.h.r() - 1 + self.value(used | rest, w, paths)?;
                    if v > best.0 {
                        best = (v, Step::Extend { edge: e, next: w });
                    }
                }
            }
        }
        self.memo.insert(key, best);
        Some(best.0)
    }

    fn solve(mut self, max_paths: usize) -> Option<Vec<Vec<Vertex>>> {
        self.value(0, NO_END, max_paths)?;
        let mut paths: Vec<Vec<Vertex>> = Vec::new();
        let (mut used, mut end, mut left) = (0u64, NO_END, max_paths);
        loop {
            let (_, step) = self.memo[&(used, end, left)];
            match step {
                Step::Stop if end == NO_END => break,
                Step::Stop => end = NO_END,
                Step::Start { edge, end: w } => {
                    let e = &self.h.edges()[edge];
                    let start = *e.iter().find(|&&v| v != w).expect("r >= 2");
                    let mut path = vec![start];
                    path.extend(e.iter().copied().filter(|&v| v != start && v != w));
                    path.push(w);
                    paths.push(path);
                    used |= self.masks[edge];
                    end = w;
                    left -= 1;
                }
                Step::Extend { edge, next } => {
                    let path = paths.last_mut().expect("open path");
                    let e = &self.h.edges()[edge];
                    path.extend(e.iter().copied().filter(|&v| v != end && v != next));
                    path.push(next);
                    used |= self.masks[edge];
                    end = next;
                }
            }
        }
        Some(paths)
    }
}

/// Greedy path growth: each path starts at a vertex of least available
/// degree (or lowest label) and extends toward the end with the fewest
/// onward options. The better of the two start rules wins.
fn greedy_paths(h: &Hypergraph, max_paths: usize) -> Vec<Vec<Vertex>> {
    let masks = h.edge_masks();
    let available = |v: usize, used: u64| {
        h.incident_edges(v)
            .iter()
            .filter(|&&e| masks[e] & used & !(1u64 << v) == 0)
            .count()
    };
    let run = |by_degree: bool| {
        let mut used = 0u64;
        let mut paths = Vec::new();
        while paths.len() < max_paths {
            let starts = (0..h.n()).filter(|&v| used >> v & 1 == 0 && available(v, used) > 0);
            let start = if by_degree {
                starts.min_by_key(|&v| (available(v, used), v))
            } else {
                starts.min()
            };
            let Some(start) = start else { break };
            let mut path = vec![start];
            used |= 1u64 << start;
            let mut end = start;
            loop {
                let mut best: Option<(usize, usize, usize)> = None;
                for &e in h.incident_edges(end) {
                    let rest = masks[e] & !(1u64 << end);
                    if rest & used != 0 {
                        continue;
                    }
                    for w in mask_vertices(rest) {
                        let onward = available(w, used | rest);
                        let score = if onward == 0 { usize::MAX } else { onward };
                        if best.is_none_or(|(s, _, _)| score < s) {
                            best = Some((score, e, w));
                        }
                    }
                }
                let Some((_, e, w)) = best else { break };
                path.extend(h.edges()[e].iter().copied().filter(|&v| v != end && v != w));
                path.push(w);
                used |= masks[e];
                end = w;
            }
            if path.len() == 1 {
                break;
            }
            paths.push(path);
        }
        let covered: usize = paths.iter().map(Vec::len).sum();
        (covered, paths)
    };
    let (a, pa) = run(true);
    let (b, pb) = run(false);
    if b > a {
        pb
    } else {
        pa
    }
}
