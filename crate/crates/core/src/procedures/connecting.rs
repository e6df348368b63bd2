//! Connecting triples and reservoirs in 3-graphs.
//!
//! A triple (x, y, z) connects the pair (a, b) when axy and yzb are edges,
//! so a x y z b is a loose path with two edges. A system of pairs is
//! connected by vertex-disjoint triples drawn from an allowed set.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::StageFailure;
use crate::hypergraph::{binomial, degree_profile, Hypergraph, Vertex};

pub type Triple = [Vertex; 3];

/// δ₁ ≥ (1/4 + γ)·C(n, 2) and 1 ≤ m ≤ γn/12. Empty for n < 19, because
/// δ₁ ≤ C(n−1, 2) forces γ ≤ 3/4 − 2/n while m ≥ 1 forces γ ≥ 12/n.
pub fn connecting_hypothesis(h: &Hypergraph, gamma: f64, m: usize) -> bool {
    let n = h.n();
    let pairs = binomial(n, 2) as f64;
    h.r() == 3
        && m >= 1
        && (m as f64) * 12.0 <= gamma * n as f64
        && degree_profile(h).delta1 as f64 >= (0.25 + gamma) * pairs
}

/// All triples inside `allowed` connecting (a, b), lexicographic in (y, x, z).
pub fn connecting_triples(h: &Hypergraph, a: Vertex, b: Vertex, allowed: &[Vertex]) -> Vec<Triple> {
    let mut out = Vec::new();
    if h.r() != 3 {
        return out;
    }
    for &y in allowed {
        let xs: Vec<Vertex> = allowed
            .iter()
            .copied()
            .filter(|&x| x != y && h.contains_edge(&[a, x, y]))
            .collect();
        if xs.is_empty() {
            continue;
        }
        let zs: Vec<Vertex> = allowed
            .iter()
            .copied()
            .filter(|&z| z != y && h.contains_edge(&[y, z, b]))
            .collect();
        for &x in &xs {
            for &z in &zs {
                if x != z {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

/// Disjoint triples inside `allowed`, one per pair, connecting every pair.
/// The search is exhaustive, so None means no such system exists.
///
/// Pairs must be disjoint and must avoid `allowed`; otherwise returns None.
pub fn connect_pairs(h: &Hypergraph, pairs: &[(Vertex, Vertex)], allowed: &[Vertex]) -> Option<Vec<Triple>> {
    if h.r() != 3 {
        return None;
    }
    let mut seen = HashSet::new();
    for &(a, b) in pairs {
        if a == b || !seen.insert(a) || !seen.insert(b) || a >= h.n() || b >= h.n() {
            return None;
        }
    }
    if allowed.iter().any(|v| seen.contains(v)) {
        return None;
    }
    if pairs.is_empty() {
        return Some(Vec::new());
    }
    if pairs.len() > 64 || 3 * pairs.len() > allowed.len() {
        return None;
    }
    let options: Vec<Vec<Triple>> = pairs
        .iter()
        .map(|&(a, b)| connecting_triples(h, a, b, allowed))
        .collect();
    let mut search = Search {
        options: &options,
        used: vec![false; h.n()],
        chosen: vec![None; pairs.len()],
        failed: HashSet::new(),
    };
    let all = if pairs.len() == 64 { u64::MAX } else { (1u64 << pairs.len()) - 1 };
    if search.run(all) {
        Some(search.chosen.into_iter().map(|t| t.expect("all pairs assigned")).collect())
    } else {
        None
    }
}

struct Search<'a> {
    options: &'a [Vec<Triple>],
    used: Vec<bool>,
    chosen: Vec<Option<Triple>>,
    failed: HashSet<(u64, Vec<bool>)>,
}

impl Search<'_> {
    fn free(&self, t: &Triple) -> bool {
        t.iter().all(|&v| !self.used[v])
    }

    fn run(&mut self, remaining: u64) -> bool {
        if remaining == 0 {
            return true;
        }
        let key = (remaining, self.used.clone());
        if self.failed.contains(&key) {
            return false;
        }
        // forward check: branch on the pair with the fewest free options
        let mut best: Option<(usize, usize)> = None;
        for i in (0..self.options.len()).filter(|&i| remaining >> i & 1 == 1) {
            let count = self.options[i].iter().filter(|t| self.free(t)).count();
            if count == 0 {
                self.failed.insert(key);
                return false;
            }
            if best.is_none_or(|(_, c)| count < c) {
                best = Some((i, count));
            }
        }
        let (i, _) = best.expect("remaining is nonempty");
        for t in &self.options[i] {
            if !self.free(t) {
                continue;
            }
            for &v in t {
                self.used[v] = true;
            }
            self.chosen[i] = Some(*t);
            if self.run(remaining & !(1 << i)) {
                return true;
            }
            for &v in t {
                self.used[v] = false;
            }
            self.chosen[i] = None;
        }
        self.failed.insert(key);
        false
    }
}

/// A vertex set R through which sampled pair systems were connected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reservoir {
    pub vertices: Vec<Vertex>,
    pub gamma: f64,
    /// ⌊γ³n/12⌋.
    pub capacity: usize,
    /// Pairs per sampled system: max(capacity, 1).
    pub system_size: usize,
    pub systems_checked: usize,
    pub attempts_used: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReservoirConfig {
    pub gamma: f64,
    pub seed: u64,
    /// Size of R; defaults to ⌊γn⌋.
    pub size: Option<usize>,
    /// Vertices R must avoid and pair systems must not use.
    pub avoid: Vec<Vertex>,
    pub attempts: usize,
    pub systems_per_attempt: usize,
}

impl ReservoirConfig {
    pub fn new(gamma: f64, seed: u64) -> Self {
        Self {
            gamma,
            seed,
            size: None,
            avoid: Vec::new(),
            attempts: 50,
            systems_per_attempt: 20,
        }
    }
}

pub fn build_reservoir(h: &Hypergraph, gamma: f64, seed: u64) -> Result<Reservoir, StageFailure> {
    build_reservoir_with(h, &ReservoirConfig::new(gamma, seed))
}

/// Samples candidate sets R and keeps the first one through which every
/// sampled system of disjoint pairs from outside R can be connected.
pub fn build_reservoir_with(h: &Hypergraph, cfg: &ReservoirConfig) -> Result<Reservoir, StageFailure> {
    let n = h.n();
    if h.r() != 3 {
        return Err(StageFailure::new("input", format!("needs a 3-graph, got r = {}", h.r())));
    }
    if !(cfg.gamma > 0.0 && cfg.gamma < 0.25) && cfg.size.is_none() {
        return Err(StageFailure::new("input", format!("gamma must lie in (0, 1/4), got {}", cfg.gamma)));
    }
    let size = cfg.size.unwrap_or((cfg.gamma * n as f64).floor() as usize);
    let capacity = (cfg.gamma.powi(3) * n as f64 / 12.0).floor() as usize;
    let system_size = capacity.max(1);
    let pool: Vec<Vertex> = (0..n).filter(|v| !cfg.avoid.contains(v)).collect();
    if size < 3 * system_size || pool.len() < size + 2 * system_size {
        return Err(StageFailure::new(
            "reservoir",
            format!("size {size} cannot hold {system_size} connecting triples with {} vertices available", pool.len()),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for attempt in 0..cfg.attempts {
        let mut shuffled = pool.clone();
        shuffled.shuffle(&mut rng);
        let mut reservoir: Vec<Vertex> = shuffled[..size].to_vec();
        reservoir.sort_unstable();
        let mut outside: Vec<Vertex> = shuffled[size..].to_vec();
        let mut ok = true;
        for _ in 0..cfg.systems_per_attempt {
            outside.shuffle(&mut rng);
            let pairs: Vec<(Vertex, Vertex)> = outside
                .chunks_exact(2)
                .take(system_size)
                .map(|c| (c[0], c[1]))
                .collect();
            if connect_pairs(h, &pairs, &reservoir).is_none() {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Reservoir {
                vertices: reservoir,
                gamma: cfg.gamma,
                capacity,
                system_size,
                systems_checked: cfg.systems_per_attempt,
                attempts_used: attempt + 1,
            });
        }
    }
    Err(StageFailure::new(
        "reservoir",
        format!("no candidate set passed verification in {} attempts", cfg.attempts),
    ))
}
