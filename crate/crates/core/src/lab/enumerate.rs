//! Isomorph-free enumeration by orderly generation, and seeded sampling
//! beyond the exhaustive limits.
//!
//! The r-subsets of `0..n` are listed in colex order and a hypergraph is
//! read as a bit string over that list, the first subset being the most
//! significant bit. A hypergraph is canonical when no vertex permutation
//! gives a larger string. Deleting the last edge of a canonical hypergraph
//! leaves a canonical one, so the canonical hypergraphs form a tree rooted
//! at the empty one: children add an edge after the current last edge and
//! are kept when canonical. Each isomorphism class is produced exactly once.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::sample_with_floor;
use crate::error::{Error, Result};
use crate::hypergraph::{degree_profile, Edge, Hypergraph};

/// Edge probabilities cycled through in sampling mode.
pub const SAMPLE_PROBABILITIES: [f64; 4] = [0.3, 0.5, 0.7, 0.9];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSummary {
    pub r: usize,
    pub n: usize,
    pub t: usize,
    pub mode: Mode,
    /// Isomorphism classes generated, or samples drawn.
    pub examined: u64,
    /// Hypergraphs passed to the callback.
    pub yielded: u64,
}

/// Whether exhaustive enumeration is available for (r, n).
pub fn exhaustive_supported(r: usize, n: usize) -> bool {
    match r {
        2 => n <= 8,
        3 => n <= 6,
        _ => false,
    }
}

/// Streams hypergraphs with δ⁺ ≥ `t` and no isolated vertices.
///
/// Exhaustive mode yields one representative per isomorphism class, in
/// increasing order of the canonical string. Sampled mode draws
/// `sample_with_floor` instances with the edge probability cycling through
/// [`SAMPLE_PROBABILITIES`]; the same seed gives the same stream.
pub fn enumerate_hypergraphs<F>(r: usize, n: usize, t: usize, mode: Mode, mut callback: F) -> Result<EnumerationSummary>
where
    F: FnMut(&Hypergraph),
{
    let mut summary = EnumerationSummary {
        r,
        n,
        t,
        mode,
        examined: 0,
        yielded: 0,
    };
    let mut emit = |h: &Hypergraph, summary: &mut EnumerationSummary| {
        let p = degree_profile(h);
        if p.isolated.is_empty() && p.delta_pos_codeg >= t {
            summary.yielded += 1;
            callback(h);
        }
    };
    match mode {
        Mode::Exhaustive => {
            for h in isomorphism_classes(r, n)? {
                summary.examined += 1;
                emit(&h, &mut summary);
            }
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in 0..samples {
                let p = SAMPLE_PROBABILITIES[i % SAMPLE_PROBABILITIES.len()];
                let h = sample_with_floor(r, n, t, p, rng.gen())?;
                summary.examined += 1;
                emit(&h, &mut summary);
            }
        }
    }
    Ok(summary)
}

/// One representative of every isomorphism class of r-graphs on n
/// vertices, including those with isolated vertices.
pub fn isomorphism_classes(r: usize, n: usize) -> Result<Vec<Hypergraph>> {
    if !exhaustive_supported(r, n) {
        return Err(Error::InvalidParameter(format!(
            "exhaustive enumeration covers r = 2 with n <= 8 and r = 3 with n <= 6, got r = {r}, n = {n}; use sampling"
        )));
    }
    let owned = SubsetSpace::new(r, n);
    let space = &owned;
    let mut level = vec![Vec::<usize>::new()];
    let mut all = Vec::new();
    while !level.is_empty() {
        let mut next: Vec<Vec<usize>> = level
            .par_iter()
            .flat_map_iter(|g| {
                let start = g.last().map_or(0, |&i| i + 1);
                (start..space.subsets.len()).filter_map(move |j| {
                    let mut child = g.clone();
                    child.push(j);
                    space.is_canonical(&child).then_some(child)
                })
            })
            .collect();
        next.sort_unstable();
        all.append(&mut level);
        level = next;
    }
    all.sort_unstable_by_key(|g| space.key(g));
    Ok(all.iter().map(|g| space.hypergraph(g)).collect())
}

/// The canonical relabeling of `h`: the isomorphic copy with the largest
/// string. Isomorphic inputs give equal outputs.
pub fn canonical_form(h: &Hypergraph) -> Result<Hypergraph> {
    if h.n() > 10 {
        return Err(Error::TooLarge {
            what: "canonical form",
            n: h.n(),
            limit: 10,
        });
    }
    let space = SubsetSpace::new(h.r(), h.n());
    let present = space.presence(h.edges());
    let mut best = present.clone();
    let mut sigma = Vec::with_capacity(h.n());
    let mut used = vec![false; h.n()];
    space.best_image(&present, &mut sigma, &mut used, &mut best, true);
    let edges: Vec<usize> = (0..best.len()).filter(|&i| best[i]).collect();
    Ok(space.hypergraph(&edges))
}

/// The r-subsets of `0..n` in colex order with their ranks.
struct SubsetSpace {
    r: usize,
    n: usize,
    subsets: Vec<Edge>,
    /// Ranks of the subsets whose largest vertex is k, in colex order.
    blocks: Vec<Vec<usize>>,
    binom: Vec<Vec<usize>>,
}

impl SubsetSpace {
    fn new(r: usize, n: usize) -> Self {
        let mut binom = vec![vec![0usize; r + 1]; n + 1];
        binom.iter_mut().for_each(|row| row[0] = 1);
        for a in 1..=n {
            for b in 1..=r {
                binom[a][b] = binom[a - 1][b - 1] + binom[a - 1][b];
            }
        }
        let mut subsets: Vec<Edge> = (0..n).combinations(r).collect();
        subsets.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        let mut blocks = vec![Vec::new(); n];
        for (i, s) in subsets.iter().enumerate() {
            blocks[*s.last().expect("r >= 1")].push(i);
        }
        Self {
            r,
            n,
            subsets,
            blocks,
            binom,
        }
    }

    /// Colex rank of a sorted subset.
    fn rank(&self, sorted: &[usize]) -> usize {
        sorted.iter().enumerate().map(|(i, &c)| self.binom[c][i + 1]).sum()
    }

    fn presence(&self, edges: &[Edge]) -> Vec<bool> {
        let mut present = vec![false; self.subsets.len()];
        for e in edges {
            present[self.rank(e)] = true;
        }
        present
    }

    fn hypergraph(&self, ranks: &[usize]) -> Hypergraph {
        let edges: Vec<Edge> = ranks.iter().map(|&i| self.subsets[i].clone()).collect();
        Hypergraph::from_unique_sorted(self.r, self.n, edges)
    }

    /// Sort key: the bit string, first subset most significant.
    fn key(&self, ranks: &[usize]) -> Vec<bool> {
        let mut bits = vec![false; self.subsets.len()];
        for &i in ranks {
            bits[i] = true;
        }
        bits
    }

    fn is_canonical(&self, ranks: &[usize]) -> bool {
        let present = self.key(ranks);
        let mut best = present.clone();
        let mut sigma = Vec::with_capacity(self.n);
        let mut used = vec![false; self.n];
        !self.best_image(&present, &mut sigma, &mut used, &mut best, false)
    }

    /// Depth-first over σ, where image vertex i is σ(i) of the input. After
    /// σ(0..=k) is fixed, the block of subsets with largest vertex k is
    /// determined and is compared against `best`. Returns true when some
    /// image beats `best`; with `improve` the search keeps going and leaves
    /// the largest image in `best`, otherwise it stops at the first win.
    fn best_image(
        &self,
        present: &[bool],
        sigma: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut Vec<bool>,
        improve: bool,
    ) -> bool {
        let k = sigma.len();
        if k == self.n {
            return false;
        }
        let mut beaten = false;
        let mut image = vec![0usize; self.r];
        for v in 0..self.n {
            if used[v] {
                continue;
            }
            sigma.push(v);
            used[v] = true;
            let mut order = std::cmp::Ordering::Equal;
            let mut bits = Vec::with_capacity(self.blocks[k].len());
            for &i in &self.blocks[k] {
                for (slot, &u) in image.iter_mut().zip(&self.subsets[i]) {
                    *slot = sigma[u];
                }
                image.sort_unstable();
                let bit = present[self.rank(&image)];
                bits.push(bit);
                if order == std::cmp::Ordering::Equal {
                    order = bit.cmp(&best[i]);
                }
            }
            match order {
                std::cmp::Ordering::Greater => {
                    beaten = true;
                    if !improve {
                        sigma.pop();
                        used[v] = false;
                        return true;
                    }
                    // a strictly larger prefix: complete it greedily into
                    // `best`, then keep refining below
                    for (&i, &bit) in self.blocks[k].iter().zip(&bits) {
                        best[i] = bit;
                    }
                    for later in &self.blocks[k + 1..] {
                        for &i in later {
                            best[i] = false;
                        }
                    }
                    self.best_image(present, sigma, used, best, improve);
                }
                std::cmp::Ordering::Equal => {
                    if self.best_image(present, sigma, used, best, improve) {
                        beaten = true;
                        if !improve {
                            sigma.pop();
                            used[v] = false;
                            return true;
                        }
                    }
                }
                std::cmp::Ordering::Less => {}
            }
            sigma.pop();
            used[v] = false;
        }
        beaten
    }
}
