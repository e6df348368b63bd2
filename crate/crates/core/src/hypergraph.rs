//! The r-uniform hypergraph model and its degree parameters.

use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// An edge is a sorted list of distinct vertex labels.
pub type Edge = Vec<Vertex>;

/// An r-uniform hypergraph on the vertex labels `0..n`.
///
/// Edges are kept sorted internally and in lexicographic order, so iteration
/// order is canonical for a given edge set. The value is immutable once built.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: Vec<Edge>,
    lookup: HashSet<Edge>,
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    /// Builds a hypergraph, rejecting malformed or duplicate edges.
    pub fn new<I, E>(r: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<Vertex>>,
    {
        if r == 0 {
            return Err(Error::InvalidUniformity(r));
        }
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for edge in edges {
            let mut edge: Edge = edge.into();
            if edge.len() != r {
                let found = edge.len();
                return Err(Error::EdgeSize {
                    edge,
                    expected: r,
                    found,
                });
            }
            edge.sort_unstable();
            if let Some(&v) = edge.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex(edge));
            }
            if !seen.insert(edge.clone()) {
                return Err(Error::DuplicateEdge(edge));
            }
            list.push(edge);
        }
        Ok(Self::from_unique_sorted(r, n, list))
    }

    /// The hypergraph with no edges.
    pub fn empty(r: usize, n: usize) -> Self {
        Self::from_unique_sorted(r.max(1), n, Vec::new())
    }

    /// Builds from edges that are already sorted, distinct and in range.
    pub(crate) fn from_unique_sorted(r: usize, n: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        let lookup: HashSet<Edge> = edges.iter().cloned().collect();
        debug_assert_eq!(lookup.len(), edges.len());
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(i);
            }
        }
        Self {
            r,
            n,
            edges,
            lookup,
            incidence,
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Membership test; the query need not be sorted.
    pub fn contains_edge(&self, vertices: &[Vertex]) -> bool {
        if vertices.len() != self.r {
            return false;
        }
        if vertices.windows(2).all(|w| w[0] < w[1]) {
            self.lookup.contains(vertices)
        } else {
            let mut key = vertices.to_vec();
            key.sort_unstable();
            self.lookup.contains(&key)
        }
    }

    /// Indices (into [`Hypergraph::edges`]) of the edges containing `v`.
    pub fn incident_edges(&self, v: Vertex) -> &[usize] {
        &self.incidence[v]
    }

    /// The vertex degree d₁(v).
    pub fn degree(&self, v: Vertex) -> usize {
        self.incidence[v].len()
    }

    pub fn isolated_vertices(&self) -> Vec<Vertex> {
        (0..self.n).filter(|&v| self.incidence[v].is_empty()).collect()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.incidence.iter().any(Vec::is_empty)
    }

    /// N(v): vertices sharing at least one edge with `v`.
    pub fn neighbors(&self, v: Vertex) -> BTreeSet<Vertex> {
        self.incidence[v]
            .iter()
            .flat_map(|&i| self.edges[i].iter().copied())
            .filter(|&u| u != v)
            .collect()
    }

    /// Whether some edge contains every vertex of `set`.
    pub fn is_covered(&self, set: &[Vertex]) -> bool {
        match set.first() {
            None => !self.edges.is_empty(),
            Some(&v) => self.incidence[v]
                .iter()
                .any(|&i| set.iter().all(|u| self.edges[i].binary_search(u).is_ok())),
        }
    }

    /// Co-degree of every (r−1)-set with positive co-degree, from one pass over the edges.
    pub fn codegree_counts(&self) -> HashMap<Vec<Vertex>, usize> {
        let mut counts = HashMap::new();
        for e in &self.edges {
            for skip in 0..e.len() {
                let key: Vec<Vertex> = e
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                *counts.entry(key).or_insert(0) += 1;
            }
        }
        counts
    }

    /// N(S) for an (r−1)-set S.
    pub fn codegree_neighborhood(&self, set: &[Vertex]) -> Result<BTreeSet<Vertex>> {
        if set.len() + 1 != self.r {
            return Err(Error::WrongSetSize {
                expected: self.r - 1,
                found: set.len(),
            });
        }
        let mut key: Vec<Vertex> = set.to_vec();
        key.sort_unstable();
        if let Some(&v) = key.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if key.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex(key));
        }
        let mut out = BTreeSet::new();
        let candidates: Vec<usize> = match key.first() {
            Some(&v) => self.incidence[v].clone(),
            None => (0..self.edges.len()).collect(),
        };
        for i in candidates {
            let e = &self.edges[i];
            if key.iter().all(|u| e.binary_search(u).is_ok()) {
                out.extend(e.iter().copied().filter(|u| key.binary_search(u).is_err()));
            }
        }
        Ok(out)
    }

    /// d_{r−1}(S).
    pub fn codegree(&self, set: &[Vertex]) -> Result<usize> {
        self.codegree_neighborhood(set).map(|s| s.len())
    }

    /// The link graph L(v), an (r−1)-graph on the same labels.
    pub fn link_graph(&self, v: Vertex) -> Result<Hypergraph> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if self.r < 2 {
            return Err(Error::InvalidUniformity(self.r - 1));
        }
        let edges = self.incidence[v]
            .iter()
            .map(|&i| self.edges[i].iter().copied().filter(|&u| u != v).collect())
            .collect();
        Ok(Self::from_unique_sorted(self.r - 1, self.n, edges))
    }

    /// The shadow graph: all (r−1)-sets of positive co-degree.
    pub fn shadow_graph(&self) -> Result<Hypergraph> {
        if self.r < 2 {
            return Err(Error::InvalidUniformity(self.r - 1));
        }
        let edges: Vec<Edge> = self.codegree_counts().into_keys().collect();
        Ok(Self::from_unique_sorted(self.r - 1, self.n, edges))
    }

    /// No edge meets `set` in two or more vertices.
    pub fn is_strongly_independent(&self, set: &[Vertex]) -> bool {
        let members: HashSet<Vertex> = set.iter().copied().collect();
        self.edges
            .iter()
            .all(|e| e.iter().filter(|v| members.contains(v)).count() < 2)
    }

    /// No edge lies entirely inside `set`.
    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        let members: HashSet<Vertex> = set.iter().copied().collect();
        !self.edges.iter().any(|e| e.iter().all(|v| members.contains(v)))
    }

    /// Sub-hypergraph keeping only the listed edges (indices into `edges()`).
    pub fn with_edges(&self, keep: impl IntoIterator<Item = usize>) -> Hypergraph {
        let edges = keep.into_iter().map(|i| self.edges[i].clone()).collect();
        Self::from_unique_sorted(self.r, self.n, edges)
    }

    /// Keeps the edges inside `vertices`, on the same label space.
    pub fn restrict_to(&self, vertices: &[Vertex]) -> Hypergraph {
        let members: HashSet<Vertex> = vertices.iter().copied().collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|v| members.contains(v)))
            .cloned()
            .collect();
        Self::from_unique_sorted(self.r, self.n, edges)
    }

    /// Applies a vertex relabeling `perm[old] = new`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Hypergraph> {
        if perm.len() != self.n || perm.iter().collect::<HashSet<_>>().len() != self.n {
            return Err(Error::InvalidParameter(
                "relabeling must be a permutation of the vertex set".into(),
            ));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| perm[v]).sorted_unstable().collect())
            .collect();
        Ok(Self::from_unique_sorted(self.r, self.n, edges))
    }

    /// Each edge as a bitmask; requires n ≤ 64.
    pub(crate) fn edge_masks(&self) -> Vec<u64> {
        debug_assert!(self.n <= 64);
        self.edges
            .iter()
            .map(|e| e.iter().fold(0u64, |m, &v| m | (1u64 << v)))
            .collect()
    }
}

/// Degree statistics of one hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    /// Minimum vertex degree δ₁.
    pub delta1: usize,
    /// Minimum co-degree δ_{r−1} over all (r−1)-sets.
    pub delta_codeg: usize,
    /// Minimum positive co-degree δ⁺_{r−1}; 0 for the empty hypergraph.
    pub delta_pos_codeg: usize,
    pub isolated: Vec<Vertex>,
    pub is_empty: bool,
}

pub fn degree_profile(h: &Hypergraph) -> DegreeProfile {
    let counts = h.codegree_counts();
    let delta_pos_codeg = counts.values().copied().min().unwrap_or(0);
    let all_sets = binomial(h.n(), h.r() - 1);
    let delta_codeg = if (counts.len() as u128) < all_sets {
        0
    } else {
        delta_pos_codeg
    };
    let delta1 = (0..h.n()).map(|v| h.degree(v)).min().unwrap_or(0);
    DegreeProfile {
        delta1,
        delta_codeg,
        delta_pos_codeg,
        isolated: h.isolated_vertices(),
        is_empty: h.is_empty(),
    }
}

/// The unique edge-maximal sub-hypergraph with δ⁺ ≥ `t`.
///
/// Each round deletes every edge that contains an (r−1)-set whose co-degree
/// is positive but below `t`; rounds repeat until nothing changes.
pub fn codegree_prune(h: &Hypergraph, t: usize) -> Hypergraph {
    let mut current = h.clone();
    loop {
        let counts = current.codegree_counts();
        let keep: Vec<usize> = current
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| {
                (0..e.len()).all(|skip| {
                    let key: Vec<Vertex> = e
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    counts[&key] >= t
                })
            })
            .map(|(i, _)| i)
            .collect();
        if keep.len() == current.edge_count() {
            return current;
        }
        current = current.with_edges(keep);
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
