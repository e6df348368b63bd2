//! Certificate structures for spanning-structure claims and their validators.
//!
//! Validators never fail: every violated invariant is listed in the returned
//! [`ValidationReport`], and an empty list means the certificate is valid.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::hypergraph::{Edge, Hypergraph, Vertex};

/// Whether a certificate must cover every vertex of the host.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Span {
    Any,
    Spanning,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<String>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<String>) -> Self {
        Self {
            valid: violations.is_empty(),
            violations,
        }
    }
}

/// A set of pairwise disjoint edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub edges: Vec<Edge>,
    pub covered: Vec<Vertex>,
}

impl Matching {
    pub fn new(edges: Vec<Edge>) -> Self {
        let mut covered: Vec<Vertex> = edges.iter().flatten().copied().collect();
        covered.sort_unstable();
        Self { edges, covered }
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_perfect_in(&self, h: &Hypergraph) -> bool {
        validate_matching(h, self, Span::Spanning).valid
    }
}

/// An alternating cyclic sequence v₁ e₁ v₂ e₂ … v_k e_k with {v_i, v_{i+1}} ⊆ e_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergeCycle {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl BergeCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Pairs (i, j), i ≠ j, where e_i contains both v_j and v_{j+1}.
    ///
    /// Indices wrap around, so j = k−1 refers to the pair {v_{k−1}, v_0}.
    pub fn strengthened_violations(&self) -> Vec<(usize, usize)> {
        let k = self.vertices.len();
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let a = self.vertices[j];
                let b = self.vertices[(j + 1) % k];
                if e.contains(&a) && e.contains(&b) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn has_strengthened_property(&self) -> bool {
        self.strengthened_violations().is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WalkKind {
    Path,
    Cycle,
}

/// A loose path or loose cycle given by its vertex order.
///
/// A path with k edges has (r−1)k + 1 vertices and edges
/// v_{i(r−1)} … v_{i(r−1)+r−1}; a cycle with k edges has k(r−1) vertices and
/// the same blocks read cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LooseWalk {
    pub vertices: Vec<Vertex>,
    pub kind: WalkKind,
    pub r: usize,
}

impl LooseWalk {
    pub fn path(r: usize, vertices: Vec<Vertex>) -> Self {
        Self {
            vertices,
            kind: WalkKind::Path,
            r,
        }
    }

    pub fn cycle(r: usize, vertices: Vec<Vertex>) -> Self {
        Self {
            vertices,
            kind: WalkKind::Cycle,
            r,
        }
    }

    /// Number of edges implied by the vertex count, if the count is consistent.
    pub fn edge_count(&self) -> Option<usize> {
        let step = self.r.checked_sub(1).filter(|&s| s > 0)?;
        let len = self.vertices.len();
        match self.kind {
            WalkKind::Path if len >= self.r && (len - 1).is_multiple_of(step) => Some((len - 1) / step),
            WalkKind::Cycle if len >= 2 * step && len.is_multiple_of(step) => Some(len / step),
            _ => None,
        }
    }

    /// The edges in walk order, each sorted. Empty if the vertex count is inconsistent.
    pub fn edges(&self) -> Vec<Edge> {
        let Some(k) = self.edge_count() else {
            return Vec::new();
        };
        let step = self.r - 1;
        let len = self.vertices.len();
        (0..k)
            .map(|i| {
                let mut e: Edge = (0..self.r)
                    .map(|j| self.vertices[(i * step + j) % len])
                    .collect();
                e.sort_unstable();
                e
            })
            .collect()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.vertices.first().copied()
    }

    pub fn last(&self) -> Option<Vertex> {
        self.vertices.last().copied()
    }

    /// The same path traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self {
            vertices,
            kind: self.kind,
            r: self.r,
        }
    }
}

fn check_vertices(h: &Hypergraph, vertices: &[Vertex], violations: &mut Vec<String>) {
    let mut seen = HashSet::new();
    for &v in vertices {
        if v >= h.n() {
            violations.push(format!("vertex {v} out of range"));
        } else if !seen.insert(v) {
            violations.push(format!("repeated vertex {v}"));
        }
    }
}

fn check_spanning(h: &Hypergraph, covered: usize, span: Span, violations: &mut Vec<String>) {
    if span == Span::Spanning && covered != h.n() {
        violations.push(format!(
            "covers {covered} of {} vertices, not spanning",
            h.n()
        ));
    }
}

pub fn validate_matching(h: &Hypergraph, m: &Matching, span: Span) -> ValidationReport {
    let mut violations = Vec::new();
    for e in &m.edges {
        if !h.contains_edge(e) {
            violations.push(format!("non-edge {e:?}"));
        }
    }
    let all: Vec<Vertex> = m.edges.iter().flatten().copied().collect();
    let before = violations.len();
    check_vertices(h, &all, &mut violations);
    if violations.len() > before {
        violations.push("edges not pairwise disjoint".into());
    }
    let mut covered = all.clone();
    covered.sort_unstable();
    covered.dedup();
    if covered != m.covered {
        violations.push("covered set does not match the edges".into());
    }
    check_spanning(h, covered.len(), span, &mut violations);
    ValidationReport::from_violations(violations)
}

pub fn validate_berge_cycle(h: &Hypergraph, c: &BergeCycle, span: Span) -> ValidationReport {
    let mut violations = Vec::new();
    let k = c.vertices.len();
    if c.edges.len() != k {
        violations.push(format!("{k} vertices but {} edges", c.edges.len()));
    }
    if k < 2 {
        violations.push("cycle needs at least two vertices".into());
    }
    check_vertices(h, &c.vertices, &mut violations);
    let mut seen = HashSet::new();
    for (i, e) in c.edges.iter().enumerate() {
        if !h.contains_edge(e) {
            violations.push(format!("non-edge {e:?}"));
        }
        let mut key = e.clone();
        key.sort_unstable();
        if !seen.insert(key) {
            violations.push(format!("duplicate edge {e:?}"));
        }
        if i < k && k > 0 {
            let a = c.vertices[i];
            let b = c.vertices[(i + 1) % k];
            if !(e.contains(&a) && e.contains(&b)) {
                violations.push(format!("edge {e:?} does not contain pair ({a}, {b})"));
            }
        }
    }
    check_spanning(h, k, span, &mut violations);
    ValidationReport::from_violations(violations)
}

pub fn validate_loose_walk(h: &Hypergraph, w: &LooseWalk, span: Span) -> ValidationReport {
    let mut violations = Vec::new();
    if w.r != h.r() {
        violations.push(format!("walk uniformity {} differs from host {}", w.r, h.r()));
    }
    check_vertices(h, &w.vertices, &mut violations);
    if w.edge_count().is_none() {
        violations.push(format!(
            "{} vertices is not a valid loose {:?} length for r = {}",
            w.vertices.len(),
            w.kind,
            w.r
        ));
    } else {
        let mut seen = HashSet::new();
        for e in w.edges() {
            if !h.contains_edge(&e) {
                violations.push(format!("non-edge {e:?}"));
            }
            if !seen.insert(e.clone()) {
                violations.push(format!("duplicate edge {e:?}"));
            }
        }
    }
    check_spanning(h, w.vertices.len(), span, &mut violations);
    ValidationReport::from_violations(violations)
}
