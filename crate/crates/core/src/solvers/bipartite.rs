//! X-saturating matchings in bipartite graphs, with Hall-violation witnesses.

use serde::{Deserialize, Serialize};

/// A bipartite graph with sides X = 0..x_size and Y = 0..y_size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    pub x_size: usize,
    pub y_size: usize,
    /// adj[x] lists the Y-neighbors of x.
    pub adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(x_size: usize, y_size: usize) -> Self {
        Self {
            x_size,
            y_size,
            adj: vec![Vec::new(); x_size],
        }
    }

    pub fn from_edges(x_size: usize, y_size: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(x_size, y_size);
        for &(x, y) in edges {
            g.add_edge(x, y);
        }
        g
    }

    pub fn add_edge(&mut self, x: usize, y: usize) {
        assert!(x < self.x_size && y < self.y_size, "edge ({x}, {y}) out of range");
        if !self.adj[x].contains(&y) {
            self.adj[x].push(y);
        }
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    /// N(W) for a set of X-vertices.
    pub fn neighborhood(&self, w: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = w.iter().flat_map(|&x| self.adj[x].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// A set W ⊆ X with |N(W)| < |W|.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallWitness {
    pub w: Vec<usize>,
    pub neighborhood: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Saturation {
    /// (x, y) pairs, one per X-vertex, in X order.
    Saturating(Vec<(usize, usize)>),
    Violation(HallWitness),
}

/// Augmenting-path search. When some x cannot be matched, the X-vertices
/// reachable from x along alternating paths form a Hall witness.
pub fn x_saturating_matching(g: &BipartiteGraph) -> Saturation {
    let mut match_y: Vec<Option<usize>> = vec![None; g.y_size];
    for x in 0..g.x_size {
        let mut seen_y = vec![false; g.y_size];
        if !augment(g, x, &mut seen_y, &mut match_y) {
            // every Y reached is matched to an X reached, so |N(W)| = |W| − 1
            let mut w: Vec<usize> = std::iter::once(x)
                .chain(
                    seen_y
                        .iter()
                        .enumerate()
                        .filter(|&(_, &s)| s)
                        .map(|(y, _)| match_y[y].expect("reached Y-vertices are matched")),
                )
                .collect();
            w.sort_unstable();
            let neighborhood = g.neighborhood(&w);
            return Saturation::Violation(HallWitness { w, neighborhood });
        }
    }
    let mut pairs: Vec<(usize, usize)> = match_y
        .iter()
        .enumerate()
        .filter_map(|(y, m)| m.map(|x| (x, y)))
        .collect();
    pairs.sort_unstable();
    Saturation::Saturating(pairs)
}

fn augment(g: &BipartiteGraph, x: usize, seen_y: &mut [bool], match_y: &mut [Option<usize>]) -> bool {
    for &y in &g.adj[x] {
        if seen_y[y] {
            continue;
        }
        seen_y[y] = true;
        if match_y[y].is_none_or(|x2| augment(g, x2, seen_y, match_y)) {
            match_y[y] = Some(x);
            return true;
        }
    }
    false
}
