//! Absorbing loose paths in 3-graphs.
//!
//! A 7-vertex loose path P = v₁…v₇ absorbs the pair {x, y} when v₂xv₄ and
//! v₄yv₆ are edges. Then Q = v₁v₃v₂xv₄yv₆v₅v₇ is a loose path on
//! V(P) ∪ {x, y} with the same endpoints. An absorbing path strings several
//! such segments together with connecting triples and absorbs any even set
//! whose vertices can be paired off to distinct segments.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::connecting::connect_pairs;
use super::StageFailure;
use crate::certificates::{validate_loose_walk, LooseWalk, Span};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};

pub const SEGMENT_LEN: usize = 7;

/// A loose path made of 7-vertex absorbing segments, joined by connecting
/// triples when there is more than one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Absorber {
    pub path: LooseWalk,
    /// Offsets of the segments in `path.vertices`; always even.
    pub segments: Vec<usize>,
}

impl Absorber {
    pub fn single(vertices: [Vertex; 7]) -> Self {
        Self {
            path: LooseWalk::path(3, vertices.to_vec()),
            segments: vec![0],
        }
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (
            self.path.first().expect("absorbers are nonempty"),
            self.path.last().expect("absorbers are nonempty"),
        )
    }

    pub fn segment(&self, i: usize) -> &[Vertex] {
        let off = self.segments[i];
        &self.path.vertices[off..off + SEGMENT_LEN]
    }

    /// Whether segment i absorbs the ordered pair (x, y).
    pub fn segment_absorbs(&self, h: &Hypergraph, i: usize, x: Vertex, y: Vertex) -> bool {
        absorbs(h, self.segment(i), x, y)
    }
}

/// The absorbing predicate: v₂xv₄ and v₄yv₆ are edges.
pub fn absorbs(h: &Hypergraph, p: &[Vertex], x: Vertex, y: Vertex) -> bool {
    h.contains_edge(&[p[1], x, p[3]]) && h.contains_edge(&[p[3], y, p[5]])
}

/// Walks every absorber for (x, y) avoiding `avoid`, calling `visit` on each;
/// stops when `visit` returns false. Order: v₄, then the edge v₃v₄v₅ with
/// (v₃, v₅) ordered, then v₂ ∈ N(x, v₄), v₆ ∈ N(y, v₄), v₁ ∈ N(v₂, v₃),
/// v₇ ∈ N(v₅, v₆), lowest labels first.
fn for_each_absorber(
    h: &Hypergraph,
    x: Vertex,
    y: Vertex,
    avoid: &[Vertex],
    mut visit: impl FnMut(&[Vertex; 7]) -> bool,
) {
    walk(h, x, y, avoid, |p, v1s, v7s| {
        for &v1 in v1s {
            for &v7 in v7s {
                if v1 != v7 && !visit(&[v1, p[1], p[2], p[3], p[4], p[5], v7]) {
                    return false;
                }
            }
        }
        true
    });
}

/// Shared skeleton: fixes v₂..v₆ and hands over the candidate lists for v₁
/// and v₇ (already excluding x, y, `avoid` and v₂..v₆).
fn walk(
    h: &Hypergraph,
    x: Vertex,
    y: Vertex,
    avoid: &[Vertex],
    mut inner: impl FnMut(&[Vertex; 7], &[Vertex], &[Vertex]) -> bool,
) {
    if h.r() != 3 || x == y || x >= h.n() || y >= h.n() {
        return;
    }
    let mut blocked = vec![false; h.n()];
    for &v in avoid.iter().chain([x, y].iter()) {
        blocked[v] = true;
    }
    let nx = h.neighbors(x);
    let ny = h.neighbors(y);
    for &v4 in nx.intersection(&ny) {
        if blocked[v4] {
            continue;
        }
        let n_x4 = h.codegree_neighborhood(&[x, v4]).expect("pair");
        let n_y4 = h.codegree_neighborhood(&[y, v4]).expect("pair");
        let mut middles: Vec<(Vertex, Vertex)> = h
            .incident_edges(v4)
            .iter()
            .flat_map(|&ei| {
                let others: Vec<Vertex> = h.edges()[ei].iter().copied().filter(|&v| v != v4).collect();
                [(others[0], others[1]), (others[1], others[0])]
            })
            .filter(|&(a, b)| !blocked[a] && !blocked[b])
            .collect();
        middles.sort_unstable();
        for (v3, v5) in middles {
            for &v2 in &n_x4 {
                if blocked[v2] || [v3, v4, v5].contains(&v2) {
                    continue;
                }
                let n23 = h.codegree_neighborhood(&[v2, v3]).expect("pair");
                if n23.is_empty() {
                    continue;
                }
                for &v6 in &n_y4 {
                    if blocked[v6] || [v2, v3, v4, v5].contains(&v6) {
                        continue;
                    }
                    let n56 = h.codegree_neighborhood(&[v5, v6]).expect("pair");
                    let core = [v2, v3, v4, v5, v6];
                    let free = |v: &&Vertex| !blocked[**v] && !core.contains(*v);
                    let v1s: Vec<Vertex> = n23.iter().filter(free).copied().collect();
                    let v7s: Vec<Vertex> = n56.iter().filter(free).copied().collect();
                    if !inner(&[0, v2, v3, v4, v5, v6, 0], &v1s, &v7s) {
                        return;
                    }
                }
            }
        }
    }
}

/// Absorbers for (x, y), at most `limit` of them (all if None).
pub fn enumerate_absorbers(h: &Hypergraph, x: Vertex, y: Vertex, limit: Option<usize>) -> Vec<Absorber> {
    enumerate_absorbers_avoiding(h, x, y, &[], limit)
}

/// As [`enumerate_absorbers`], with no vertex of `avoid` on the path.
pub fn enumerate_absorbers_avoiding(
    h: &Hypergraph,
    x: Vertex,
    y: Vertex,
    avoid: &[Vertex],
    limit: Option<usize>,
) -> Vec<Absorber> {
    let mut out = Vec::new();
    if limit == Some(0) {
        return out;
    }
    for_each_absorber(h, x, y, avoid, |p| {
        out.push(Absorber::single(*p));
        limit.is_none_or(|l| out.len() < l)
    });
    out
}

/// Number of absorbers for (x, y), counting v₁, v₇ choices without listing
/// them.
pub fn count_absorbers(h: &Hypergraph, x: Vertex, y: Vertex) -> u64 {
    let mut total = 0u64;
    walk(h, x, y, &[], |_, v1s, v7s| {
        let shared = v1s.iter().filter(|v| v7s.binary_search(v).is_ok()).count();
        total += (v1s.len() * v7s.len() - shared) as u64;
        true
    });
    total
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsorberConfig {
    /// Number of 7-vertex segments.
    pub segments: usize,
    pub seed: u64,
    /// Vertices the absorbing path must not use.
    pub avoid: Vec<Vertex>,
}

/// Picks disjoint absorbing segments greedily (targets drawn in seeded
/// order) and joins consecutive segments with connecting triples taken from
/// the remaining vertices.
pub fn build_absorbing_path(h: &Hypergraph, cfg: &AbsorberConfig) -> std::result::Result<Absorber, StageFailure> {
    if h.r() != 3 {
        return Err(StageFailure::new("input", format!("needs a 3-graph, got r = {}", h.r())));
    }
    if cfg.segments == 0 {
        return Err(StageFailure::new("input", "at least one segment is needed"));
    }
    let n = h.n();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut used = vec![false; n];
    for &v in &cfg.avoid {
        used[v] = true;
    }
    let mut segments: Vec<[Vertex; 7]> = Vec::new();
    while segments.len() < cfg.segments {
        let mut free: Vec<Vertex> = (0..n).filter(|&v| !used[v]).collect();
        free.shuffle(&mut rng);
        let taken: Vec<Vertex> = (0..n).filter(|&v| used[v]).collect();
        let found = free.chunks_exact(2).find_map(|c| {
            enumerate_absorbers_avoiding(h, c[0], c[1], &taken, Some(1))
                .pop()
                .map(|a| a.path.vertices)
        });
        let Some(seg) = found else {
            return Err(StageFailure::new(
                "absorbing-path",
                format!("found {} of {} disjoint segments", segments.len(), cfg.segments),
            ));
        };
        for &v in &seg {
            used[v] = true;
        }
        segments.push(seg.try_into().expect("segments have 7 vertices"));
    }
    let pairs: Vec<(Vertex, Vertex)> = segments.windows(2).map(|w| (w[0][6], w[1][0])).collect();
    let allowed: Vec<Vertex> = (0..n).filter(|&v| !used[v]).collect();
    let triples = connect_pairs(h, &pairs, &allowed).ok_or_else(|| {
        StageFailure::new("absorbing-path", format!("could not connect {} segments", segments.len()))
    })?;
    let mut vertices = Vec::new();
    let mut offsets = Vec::new();
    for (i, seg) in segments.iter().enumerate() {
        offsets.push(vertices.len());
        vertices.extend_from_slice(seg);
        if let Some(t) = triples.get(i) {
            vertices.extend_from_slice(t);
        }
    }
    let path = LooseWalk::path(3, vertices);
    let report = validate_loose_walk(h, &path, Span::Any);
    if !report.valid {
        return Err(StageFailure::new("absorbing-path", report.violations.join("; ")));
    }
    Ok(Absorber {
        path,
        segments: offsets,
    })
}

/// Reroutes `a` through the vertices of `u`: pairs up U, gives each pair its
/// own segment and replaces v₁…v₇ by v₁v₃v₂xv₄yv₆v₅v₇ there. The result has
/// the same endpoints as `a.path` and vertex set V(P) ∪ U.
pub fn absorb(h: &Hypergraph, a: &Absorber, u: &[Vertex]) -> Result<LooseWalk> {
    if u.len() % 2 == 1 {
        return Err(Error::InvalidParameter(format!("cannot absorb an odd set of {} vertices", u.len())));
    }
    let mut seen = vec![false; h.n()];
    for &v in &a.path.vertices {
        seen[v] = true;
    }
    for &v in u {
        if v >= h.n() || seen[v] {
            return Err(Error::InvalidParameter(format!("vertex {v} is on the path, repeated or out of range")));
        }
        seen[v] = true;
    }
    if u.is_empty() {
        return Ok(a.path.clone());
    }
    let mut pending: Vec<Vertex> = u.to_vec();
    pending.sort_unstable();
    let mut assigned: Vec<Option<(Vertex, Vertex)>> = vec![None; a.segments.len()];
    if !pair_up(h, a, &mut pending, &mut assigned) {
        return Err(Error::Absorption(format!(
            "no assignment of {} pairs to {} segments",
            u.len() / 2,
            a.segments.len()
        )));
    }
    let mut vertices = a.path.vertices.clone();
    for (i, pair) in assigned.iter().enumerate().rev() {
        let Some((x, y)) = *pair else { continue };
        let off = a.segments[i];
        let p = &a.path.vertices[off..off + SEGMENT_LEN];
        let q = [p[0], p[2], p[1], x, p[3], y, p[5], p[4], p[6]];
        vertices.splice(off..off + SEGMENT_LEN, q);
    }
    let q = LooseWalk::path(3, vertices);
    let report = validate_loose_walk(h, &q, Span::Any);
    if !report.valid {
        return Err(Error::Absorption(report.violations.join("; ")));
    }
    Ok(q)
}

fn pair_up(h: &Hypergraph, a: &Absorber, pending: &mut Vec<Vertex>, assigned: &mut [Option<(Vertex, Vertex)>]) -> bool {
    let Some(&first) = pending.first() else {
        return true;
    };
    for j in 1..pending.len() {
        let partner = pending[j];
        for s in 0..assigned.len() {
            if assigned[s].is_some() {
                continue;
            }
            for (x, y) in [(first, partner), (partner, first)] {
                if !a.segment_absorbs(h, s, x, y) {
                    continue;
                }
                assigned[s] = Some((x, y));
                let rest_before = pending.clone();
                pending.retain(|&v| v != first && v != partner);
                if pair_up(h, a, pending, assigned) {
                    return true;
                }
                *pending = rest_before;
                assigned[s] = None;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, sample_with_floor};
    use itertools::Itertools;

    /// Every ordered 7-sequence of distinct vertices outside {x, y}.
    fn naive_count(h: &Hypergraph, x: Vertex, y: Vertex) -> u64 {
        let pool: Vec<Vertex> = (0..h.n()).filter(|&v| v != x && v != y).collect();
        pool.iter()
            .copied()
            .permutations(7)
            .filter(|p| {
                h.contains_edge(&[p[0], p[1], p[2]])
                    && h.contains_edge(&[p[2], p[3], p[4]])
                    && h.contains_edge(&[p[4], p[5], p[6]])
                    && absorbs(h, p, x, y)
            })
            .count() as u64
    }

    #[test]
    fn complete_nine_matches_oracle() {
        let h = complete(3, 9).unwrap();
        assert_eq!(count_absorbers(&h, 0, 1), 5040);
        assert_eq!(enumerate_absorbers(&h, 0, 1, None).len(), 5040);
        assert_eq!(naive_count(&h, 0, 1), 5040);
    }

    #[test]
    fn limit_is_respected() {
        let h = complete(3, 12).unwrap();
        let found = enumerate_absorbers(&h, 3, 8, Some(10));
        assert_eq!(found.len(), 10);
        for a in &found {
            assert!(a.segment_absorbs(&h, 0, 3, 8));
            assert!(validate_loose_walk(&h, &a.path, Span::Any).valid);
        }
    }

    #[test]
    fn isolated_target_has_none() {
        let h = Hypergraph::new(3, 9, vec![vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        assert!(enumerate_absorbers(&h, 0, 1, None).is_empty());
        assert_eq!(count_absorbers(&h, 0, 1), 0);
    }

    #[test]
    fn random_counts_match_oracle() {
        for seed in 0..12 {
            let h = sample_with_floor(3, 9, 0, 0.7, seed).unwrap();
            let (x, y) = ((seed % 9) as usize, ((seed + 4) % 9) as usize);
            let naive = naive_count(&h, x, y);
            assert_eq!(count_absorbers(&h, x, y), naive, "seed {seed}");
            assert_eq!(enumerate_absorbers(&h, x, y, None).len() as u64, naive);
        }
    }

    #[test]
    fn single_reroute() {
        let h = complete(3, 9).unwrap();
        let a = Absorber::single([0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(absorb(&h, &a, &[]).unwrap(), a.path);
        let q = absorb(&h, &a, &[7, 8]).unwrap();
        assert_eq!(q.vertices, vec![0, 2, 1, 7, 3, 8, 5, 4, 6]);
        assert!(absorb(&h, &a, &[7]).is_err());
        assert!(absorb(&h, &a, &[1, 7]).is_err());
    }

    #[test]
    fn assembled_path_absorbs_four() {
        let h = complete(3, 22).unwrap();
        let cfg = AbsorberConfig {
            segments: 2,
            seed: 5,
            avoid: Vec::new(),
        };
        let a = build_absorbing_path(&h, &cfg).unwrap();
        assert_eq!(a.path.vertices.len(), 17);
        let rest: Vec<Vertex> = (0..22).filter(|v| !a.path.vertices.contains(v)).take(4).collect();
        let q = absorb(&h, &a, &rest).unwrap();
        assert_eq!((q.first(), q.last()), (a.path.first(), a.path.last()));
        let mut got = q.vertices.clone();
        got.sort_unstable();
        let mut want: Vec<Vertex> = a.path.vertices.iter().chain(rest.iter()).copied().collect();
        want.sort_unstable();
        assert_eq!(got, want);
        // three pairs need three segments
        let h = complete(3, 24).unwrap();
        let a = build_absorbing_path(&h, &cfg).unwrap();
        let more: Vec<Vertex> = (0..24).filter(|v| !a.path.vertices.contains(v)).take(6).collect();
        assert!(matches!(absorb(&h, &a, &more), Err(Error::Absorption(_))));
    }

    #[test]
    fn empty_graph_has_no_absorbing_path() {
        let cfg = AbsorberConfig {
            segments: 1,
            seed: 0,
            avoid: Vec::new(),
        };
        assert!(build_absorbing_path(&Hypergraph::empty(3, 12), &cfg).is_err());
    }
}
