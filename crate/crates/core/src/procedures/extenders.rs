//! Perfect matchings in 3-graphs by local augmentation.
//!
//! Starting from a maximal matching M with unmatched set U, each step finds
//! one of the following exchanges, in this order, and returns a strictly
//! larger matching:
//!
//! 1. an edge inside U (only if M was not maximal);
//! 2. a pair swap: disjoint pairs xy, vw in U of positive co-degree and an
//!    edge abc ∈ M with a ∈ N(x,y), b ∈ N(v,w), giving M − abc + axy + bvw;
//! 3. an M-extender for a triple x, y, z ∈ U: edges x₁y₁z₁, x₂y₂z₂ ∈ M with
//!    xx₁x₂, yy₁y₂, zz₁z₂ ∈ E, replacing two edges by three. Triples whose
//!    members each have at most one neighbor in U come first, then triples
//!    containing a cherry (d(x,y), d(x,z) > 0), then all others. Matching
//!    edges are tried in decreasing order of f(e) = Σ_v |{u ∈ e : {v,u} lies
//!    in an edge}|, and every labeling of both edges is tried;
//! 4. a 2-for-1 swap: an edge e ∈ M such that U ∪ V(e) contains two disjoint
//!    edges.
//!
//! If 3 | n, there are no isolated vertices and δ⁺ ≥ 2n/3 − 1, some exchange
//! applies to every non-perfect maximal matching.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::certificates::Matching;
use crate::error::{Error, Result};
use crate::hypergraph::{degree_profile, Edge, Hypergraph, Vertex};

/// A matching, its unmatched vertices, the candidate sets S₁..S_k drawn from
/// the unmatched vertices, and f(S_i, e) for every matching edge e.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentationState {
    pub matching: Matching,
    pub unmatched: Vec<Vertex>,
    pub candidate_sets: Vec<Vec<Vertex>>,
    /// f_table[i][j] = number of vertices u of matching edge j such that
    /// S_i ∪ {u} lies in a host edge.
    pub f_table: Vec<Vec<usize>>,
}

impl AugmentationState {
    pub fn new(h: &Hypergraph, matching: Matching) -> Self {
        let unmatched = (0..h.n())
            .filter(|v| matching.covered.binary_search(v).is_err())
            .collect();
        Self {
            matching,
            unmatched,
            candidate_sets: Vec::new(),
            f_table: Vec::new(),
        }
    }

    /// Replaces the candidate sets and recomputes the f table.
    pub fn set_candidates(&mut self, h: &Hypergraph, sets: Vec<Vec<Vertex>>) {
        self.f_table = sets
            .iter()
            .map(|s| self.matching.edges.iter().map(|e| f_value(h, s, e)).collect())
            .collect();
        self.candidate_sets = sets;
    }

    /// Checks the state invariants against the host; returns the violations.
    pub fn check(&self, h: &Hypergraph) -> Vec<String> {
        let mut out = Vec::new();
        let expected: Vec<Vertex> = (0..h.n())
            .filter(|v| self.matching.covered.binary_search(v).is_err())
            .collect();
        if expected != self.unmatched {
            out.push("unmatched set does not match the matching".into());
        }
        let mut seen = std::collections::HashSet::new();
        for s in &self.candidate_sets {
            for v in s {
                if !self.unmatched.contains(v) {
                    out.push(format!("candidate vertex {v} is matched"));
                }
                if !seen.insert(*v) {
                    out.push(format!("candidate sets overlap at {v}"));
                }
            }
        }
        for (i, s) in self.candidate_sets.iter().enumerate() {
            for (j, e) in self.matching.edges.iter().enumerate() {
                if self.f_table.get(i).and_then(|row| row.get(j)) != Some(&f_value(h, s, e)) {
                    out.push(format!("f({i}, {j}) is stale"));
                }
            }
        }
        out
    }
}

/// f(S, e): vertices u of e such that S ∪ {u} lies in some host edge.
pub fn f_value(h: &Hypergraph, s: &[Vertex], e: &[Vertex]) -> usize {
    e.iter()
        .filter(|u| {
            let mut set = s.to_vec();
            set.push(**u);
            h.is_covered(&set)
        })
        .count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum AugmentCase {
    AddEdge { edge: Edge },
    PairSwap { removed: Edge },
    Extender { triple: [Vertex; 3], removed: [Edge; 2], kind: TripleKind },
    TwoForOne { removed: Edge },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TripleKind {
    LowDegree,
    Cherry,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Augmentation {
    pub matching: Matching,
    pub case: AugmentCase,
}

/// One augmentation step. Returns a strictly larger matching, or None if no
/// exchange of the listed kinds exists. The state's candidate sets and f
/// table are updated with the last triple examined.
pub fn augment_step_3(h: &Hypergraph, state: &mut AugmentationState) -> Result<Option<Augmentation>> {
    if h.r() != 3 {
        return Err(Error::WrongUniformity {
            expected: 3,
            found: h.r(),
        });
    }
    let m = state.matching.edges.clone();
    let u = state.unmatched.clone();
    let in_u = {
        let mut mask = vec![false; h.n()];
        for &v in &u {
            mask[v] = true;
        }
        mask
    };
    let finish = |edges: Vec<Edge>, case: AugmentCase| {
        Some(Augmentation {
            matching: Matching::new(edges),
            case,
        })
    };

    if let Some(e) = h.edges().iter().find(|e| e.iter().all(|&v| in_u[v])) {
        let mut edges = m.clone();
        edges.push(e.clone());
        return Ok(finish(edges, AugmentCase::AddEdge { edge: e.clone() }));
    }

    let positive_pairs: Vec<(Vertex, Vertex)> = u
        .iter()
        .copied()
        .tuple_combinations()
        .filter(|&(a, b)| h.is_covered(&[a, b]))
        .collect();
    for (p, q) in positive_pairs.iter().tuple_combinations() {
        if p.0 == q.0 || p.0 == q.1 || p.1 == q.0 || p.1 == q.1 {
            continue;
        }
        for (idx, abc) in m.iter().enumerate() {
            for (a, b) in abc.iter().copied().tuple_combinations().flat_map(|(a, b)| [(a, b), (b, a)]) {
                if h.contains_edge(&[a, p.0, p.1]) && h.contains_edge(&[b, q.0, q.1]) {
                    let mut edges: Vec<Edge> = m.iter().enumerate().filter(|&(j, _)| j != idx).map(|(_, e)| e.clone()).collect();
                    edges.push(sorted(&[a, p.0, p.1]));
                    edges.push(sorted(&[b, q.0, q.1]));
                    return Ok(finish(edges, AugmentCase::PairSwap { removed: abc.clone() }));
                }
            }
        }
    }

    let u_neighbors = |v: Vertex| h.neighbors(v).into_iter().filter(|&w| in_u[w]).count();
    let mut triples: Vec<([Vertex; 3], TripleKind)> = u
        .iter()
        .copied()
        .tuple_combinations()
        .map(|(x, y, z)| {
            let low = [x, y, z].iter().all(|&v| u_neighbors(v) <= 1);
            let cherry = [(x, y, z), (y, x, z), (z, x, y)]
                .iter()
                .any(|&(c, a, b)| h.is_covered(&[c, a]) && h.is_covered(&[c, b]));
            let kind = if low {
                TripleKind::LowDegree
            } else if cherry {
                TripleKind::Cherry
            } else {
                TripleKind::Other
            };
            ([x, y, z], kind)
        })
        .collect();
    triples.sort_by_key(|&(t, kind)| (kind as u8, t));
    for (triple, kind) in triples {
        state.set_candidates(h, triple.iter().map(|&v| vec![v]).collect());
        if let Some((i, j, new_edges)) = find_extender(h, &state.matching.edges, triple, &state.f_table) {
            let removed = [m[i].clone(), m[j].clone()];
            let mut edges: Vec<Edge> = m
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != j)
                .map(|(_, e)| e.clone())
                .collect();
            edges.extend(new_edges);
            return Ok(finish(edges, AugmentCase::Extender { triple, removed, kind }));
        }
    }

    for (idx, e) in m.iter().enumerate() {
        let pool: Vec<Vertex> = u.iter().chain(e.iter()).copied().collect();
        let inside: Vec<&Edge> = h
            .edges()
            .iter()
            .filter(|f| f.iter().all(|v| pool.contains(v)))
            .collect();
        for (a, b) in inside.iter().tuple_combinations() {
            if a.iter().all(|v| !b.contains(v)) {
                let mut edges: Vec<Edge> = m.iter().enumerate().filter(|&(k, _)| k != idx).map(|(_, f)| f.clone()).collect();
                edges.push((*a).clone());
                edges.push((*b).clone());
                return Ok(finish(edges, AugmentCase::TwoForOne { removed: e.clone() }));
            }
        }
    }
    Ok(None)
}

fn sorted(vs: &[Vertex]) -> Edge {
    let mut e = vs.to_vec();
    e.sort_unstable();
    e
}

/// Searches for two matching edges and labelings forming an M-extender for
/// `triple`; returns the edge indices and the three new edges.
fn find_extender(
    h: &Hypergraph,
    m: &[Edge],
    triple: [Vertex; 3],
    f_table: &[Vec<usize>],
) -> Option<(usize, usize, Vec<Edge>)> {
    let f = |j: usize| -> usize { f_table.iter().map(|row| row[j]).sum() };
    let mut order: Vec<usize> = (0..m.len()).collect();
    order.sort_by_key(|&j| (std::cmp::Reverse(f(j)), j));
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            for l1 in m[i].iter().copied().permutations(3) {
                let first_ok = (0..3).all(|t| {
                    m[j].iter().any(|&w| h.contains_edge(&[triple[t], l1[t], w]))
                });
                if !first_ok {
                    continue;
                }
                for l2 in m[j].iter().copied().permutations(3) {
                    if (0..3).all(|t| h.contains_edge(&[triple[t], l1[t], l2[t]])) {
                        let new_edges = (0..3).map(|t| sorted(&[triple[t], l1[t], l2[t]])).collect();
                        return Some((i, j, new_edges));
                    }
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtenderOutcome {
    /// 3 | n, no isolated vertices and 3·δ⁺ ≥ 2n − 3.
    pub hypotheses_met: bool,
    pub matching: Matching,
    pub perfect: bool,
    pub steps: Vec<AugmentCase>,
}

pub fn extender_hypotheses(h: &Hypergraph) -> bool {
    let p = degree_profile(h);
    h.r() == 3 && h.n().is_multiple_of(3) && p.isolated.is_empty() && 3 * p.delta_pos_codeg + 3 >= 2 * h.n()
}

/// Greedy maximal matching (edges in lexicographic order), then augmentation
/// steps until the matching is perfect or no step applies.
pub fn perfect_matching_via_extenders(h: &Hypergraph) -> Result<ExtenderOutcome> {
    let mut used = vec![false; h.n()];
    let mut edges = Vec::new();
    for e in h.edges() {
        if e.iter().all(|&v| !used[v]) {
            for &v in e {
                used[v] = true;
            }
            edges.push(e.clone());
        }
    }
    perfect_matching_via_extenders_from(h, Matching::new(edges))
}

pub fn perfect_matching_via_extenders_from(h: &Hypergraph, start: Matching) -> Result<ExtenderOutcome> {
    if h.r() != 3 {
        return Err(Error::WrongUniformity {
            expected: 3,
            found: h.r(),
        });
    }
    let mut matching = start;
    let mut steps = Vec::new();
    loop {
        if matching.covered.len() == h.n() {
            break;
        }
        let mut state = AugmentationState::new(h, matching.clone());
        match augment_step_3(h, &mut state)? {
            Some(aug) => {
                debug_assert!(aug.matching.size() > matching.size());
                matching = aug.matching;
                steps.push(aug.case);
            }
            None => break,
        }
    }
    Ok(ExtenderOutcome {
        hypotheses_met: extender_hypotheses(h),
        perfect: matching.covered.len() == h.n(),
        matching,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::{validate_matching, Span};
    use crate::constructions::{complete, make_huv, sample_with_floor};
    use crate::solvers::{has_perfect_matching, max_matching};

    #[test]
    fn dense_case_augments() {
        let h = complete(3, 9).unwrap();
        let mut state = AugmentationState::new(&h, Matching::new(vec![vec![0, 1, 2]]));
        let aug = augment_step_3(&h, &mut state).unwrap().unwrap();
        assert_eq!(aug.matching.size(), 2);
        assert!(validate_matching(&h, &aug.matching, Span::Any).valid);
        let out = perfect_matching_via_extenders(&h).unwrap();
        assert!(out.perfect && out.hypotheses_met);
    }

    #[test]
    fn construction_is_stuck() {
        let (h, _) = make_huv(3, 9, 4).unwrap();
        let m = max_matching(&h);
        let mut state = AugmentationState::new(&h, m);
        assert!(augment_step_3(&h, &mut state).unwrap().is_none());
        let out = perfect_matching_via_extenders(&h).unwrap();
        assert!(!out.perfect && !out.hypotheses_met);
    }

    #[test]
    fn extender_case_is_exercised() {
        // M = {012, 345}, U = {6,7,8} independent with no positive pairs;
        // edges 6·0·3, 7·1·4, 8·2·5 form an M-extender.
        let edges = vec![
            vec![0, 1, 2],
            vec![3, 4, 5],
            vec![0, 3, 6],
            vec![1, 4, 7],
            vec![2, 5, 8],
        ];
        let h = Hypergraph::new(3, 9, edges).unwrap();
        let mut state = AugmentationState::new(&h, Matching::new(vec![vec![0, 1, 2], vec![3, 4, 5]]));
        let aug = augment_step_3(&h, &mut state).unwrap().unwrap();
        assert!(matches!(aug.case, AugmentCase::Extender { kind: TripleKind::LowDegree, .. }));
        assert!(aug.matching.is_perfect_in(&h));
        assert!(state.check(&h).is_empty());
    }

    #[test]
    fn pair_swap_is_exercised() {
        // U = {3,4,5,6}: pairs 34 and 56 both see vertices of edge 012
        let edges = vec![vec![0, 1, 2], vec![0, 3, 4], vec![1, 5, 6]];
        let h = Hypergraph::new(3, 7, edges).unwrap();
        let mut state = AugmentationState::new(&h, Matching::new(vec![vec![0, 1, 2]]));
        let aug = augment_step_3(&h, &mut state).unwrap().unwrap();
        assert!(matches!(aug.case, AugmentCase::PairSwap { .. }));
        assert_eq!(aug.matching.size(), 2);
    }

    #[test]
    fn regime_instances_reach_perfect() {
        let mut checked = 0;
        for seed in 0..120 {
            let n: usize = [6, 9, 12][seed as usize % 3];
            let t = (2 * n).div_ceil(3) - 1;
            let h = sample_with_floor(3, n, t, 0.9, seed).unwrap();
            if !extender_hypotheses(&h) {
                continue;
            }
            checked += 1;
            let out = perfect_matching_via_extenders(&h).unwrap();
            assert!(out.perfect, "seed {seed}");
            assert!(out.matching.is_perfect_in(&h));
        }
        assert!(checked > 20);
    }

    #[test]
    fn never_beats_the_maximum() {
        for seed in 0..60 {
            let h = sample_with_floor(3, 9, 0, 0.3, seed).unwrap();
            let out = perfect_matching_via_extenders(&h).unwrap();
            assert!(validate_matching(&h, &out.matching, Span::Any).valid);
            assert!(out.matching.size() <= max_matching(&h).size());
            if out.perfect {
                assert!(has_perfect_matching(&h).is_some());
            }
        }
    }
}
