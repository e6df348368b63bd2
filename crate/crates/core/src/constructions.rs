//! Generators for the named extremal constructions and test instances.
//!
//! Every generator returns the hypergraph together with a
//! [`ConstructionSheet`] whose claimed δ⁺ has already been checked against
//! [`degree_profile`]. Absence claims are data; the solvers verify them.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hypergraph::{codegree_prune, degree_profile, Edge, Hypergraph};
use crate::solvers::Structure;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsenceClaim {
    pub structure: Structure,
    /// The parameter condition that forces the absence, e.g. `|V| > n/2`.
    pub regime: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionSheet {
    pub name: String,
    pub parameters: Value,
    pub claimed_delta_pos: usize,
    pub claimed_absences: Vec<AbsenceClaim>,
}

impl ConstructionSheet {
    fn checked(
        h: &Hypergraph,
        name: &str,
        parameters: Value,
        claimed_delta_pos: usize,
        claimed_absences: Vec<AbsenceClaim>,
    ) -> Self {
        let actual = degree_profile(h).delta_pos_codeg;
        assert_eq!(
            actual, claimed_delta_pos,
            "{name}: generated δ⁺ {actual} differs from the claimed {claimed_delta_pos}"
        );
        Self {
            name: name.to_string(),
            parameters,
            claimed_delta_pos,
            claimed_absences,
        }
    }
}

fn require_uniformity(r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!(
            "constructions need uniformity at least 2, got {r}"
        )));
    }
    Ok(())
}

/// H^r_{U,V}: U = {0..n−v−1}, V the remaining `v_size` vertices, and every
/// r-set with at least r−1 vertices in U is an edge.
///
/// With V nonempty, δ⁺ = |U| − (r−2), attained by sets with one vertex in V.
/// V is strongly independent, which forces the recorded absences.
pub fn make_huv(r: usize, n: usize, v_size: usize) -> Result<(Hypergraph, ConstructionSheet)> {
    require_uniformity(r)?;
    if v_size > n || n - v_size < r - 1 {
        return Err(Error::InvalidParameter(format!(
            "H_(U,V) needs |U| = n - |V| >= r - 1; got r = {r}, n = {n}, |V| = {v_size}"
        )));
    }
    let u = n - v_size;
    let edges: Vec<Edge> = (0..n)
        .combinations(r)
        .filter(|e| e.iter().filter(|&&x| x < u).count() + 1 >= r)
        .collect();
    let h = Hypergraph::from_unique_sorted(r, n, edges);
    let claimed = if h.is_empty() {
        0
    } else if v_size == 0 {
        n - r + 1
    } else {
        u + 2 - r
    };
    let mut absences = Vec::new();
    if v_size * r > n {
        absences.push(AbsenceClaim {
            structure: Structure::PerfectMatching,
            regime: "|V| > n/r".into(),
        });
    }
    if v_size * 2 > n {
        absences.push(AbsenceClaim {
            structure: Structure::BergeHc,
            regime: "|V| > n/2".into(),
        });
    }
    if v_size * (r - 1) > n {
        absences.push(AbsenceClaim {
            structure: Structure::LooseHc,
            regime: "|V| > n/(r-1)".into(),
        });
    }
    let sheet = ConstructionSheet::checked(
        &h,
        "huv",
        json!({"r": r, "n": n, "u": u, "v": v_size}),
        claimed,
        absences,
    );
    Ok((h, sheet))
}

/// All C(n, r) edges.
pub fn complete(r: usize, n: usize) -> Result<Hypergraph> {
    if r == 0 || n < r {
        return Err(Error::InvalidParameter(format!(
            "complete hypergraph needs 1 <= r <= n; got r = {r}, n = {n}"
        )));
    }
    Ok(Hypergraph::from_unique_sorted(r, n, (0..n).combinations(r).collect()))
}

pub fn complete_with_sheet(r: usize, n: usize) -> Result<(Hypergraph, ConstructionSheet)> {
    let h = complete(r, n)?;
    let sheet = ConstructionSheet::checked(&h, "complete", json!({"r": r, "n": n}), n + 1 - r, vec![]);
    Ok((h, sheet))
}

/// Disjoint union of two complete 3-graphs on n/2 vertices each.
pub fn two_cliques(n: usize) -> Result<(Hypergraph, ConstructionSheet)> {
    if !n.is_multiple_of(2) || n < 6 {
        return Err(Error::InvalidParameter(format!(
            "two_cliques needs an even n >= 6, got {n}"
        )));
    }
    let half = n / 2;
    let edges: Vec<Edge> = (0..half)
        .combinations(3)
        .chain((half..n).combinations(3))
        .collect();
    let h = Hypergraph::from_unique_sorted(3, n, edges);
    let disconnected = "disconnected".to_string();
    let sheet = ConstructionSheet::checked(
        &h,
        "two-cliques",
        json!({"r": 3, "n": n, "clique": half}),
        half - 2,
        vec![
            AbsenceClaim {
                structure: Structure::BergeHc,
                regime: disconnected.clone(),
            },
            AbsenceClaim {
                structure: Structure::LooseHc,
                regime: disconnected,
            },
        ],
    );
    Ok((h, sheet))
}

/// The loose cycle with k edges on k(r−1) vertices, in its defining order.
pub fn loose_cycle_graph(r: usize, k: usize) -> Result<Hypergraph> {
    require_uniformity(r)?;
    if k < 2 || (r == 2 && k < 3) {
        return Err(Error::InvalidParameter(format!(
            "a loose cycle with r = {r} needs at least {} edges, got {k}",
            if r == 2 { 3 } else { 2 }
        )));
    }
    let len = k * (r - 1);
    let edges: Vec<Edge> = (0..k)
        .map(|i| {
            (0..r)
                .map(|j| (i * (r - 1) + j) % len)
                .sorted_unstable()
                .collect()
        })
        .collect();
    Ok(Hypergraph::from_unique_sorted(r, len, edges))
}

pub fn loose_cycle_with_sheet(r: usize, k: usize) -> Result<(Hypergraph, ConstructionSheet)> {
    let h = loose_cycle_graph(r, k)?;
    let claimed = if r == 2 { 2 } else { 1 };
    let sheet = ConstructionSheet::checked(
        &h,
        "loose-cycle",
        json!({"r": r, "k": k, "n": h.n()}),
        claimed,
        vec![],
    );
    Ok((h, sheet))
}

/// Keeps each r-set independently with probability `edge_probability`, then
/// prunes to the largest sub-hypergraph with δ⁺ ≥ `t`.
pub fn sample_with_floor(
    r: usize,
    n: usize,
    t: usize,
    edge_probability: f64,
    seed: u64,
) -> Result<Hypergraph> {
    if r == 0 {
        return Err(Error::InvalidUniformity(r));
    }
    if !(0.0..=1.0).contains(&edge_probability) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {edge_probability} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<Edge> = (0..n)
        .combinations(r)
        .filter(|_| rng.gen_bool(edge_probability))
        .collect();
    Ok(codegree_prune(&Hypergraph::from_unique_sorted(r, n, edges), t))
}

/// A named generator invocation, as accepted by the command line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Construction {
    Huv { r: usize, n: usize, v: usize },
    Complete { r: usize, n: usize },
    TwoCliques { n: usize },
    LooseCycle { r: usize, k: usize },
    Sample { r: usize, n: usize, t: usize, p: f64, seed: u64 },
}

impl Construction {
    pub fn build(&self) -> Result<(Hypergraph, ConstructionSheet)> {
        match *self {
            Construction::Huv { r, n, v } => make_huv(r, n, v),
            Construction::Complete { r, n } => complete_with_sheet(r, n),
            Construction::TwoCliques { n } => two_cliques(n),
            Construction::LooseCycle { r, k } => loose_cycle_with_sheet(r, k),
            Construction::Sample { r, n, t, p, seed } => {
                let h = sample_with_floor(r, n, t, p, seed)?;
                let actual = degree_profile(&h).delta_pos_codeg;
                let sheet = ConstructionSheet::checked(
                    &h,
                    "sample",
                    json!({"r": r, "n": n, "t": t, "p": p, "seed": seed}),
                    actual,
                    vec![],
                );
                Ok((h, sheet))
            }
        }
    }

    /// A file-name stem such as `huv_3_9_4`.
    pub fn stem(&self) -> String {
        match *self {
            Construction::Huv { r, n, v } => format!("huv_{r}_{n}_{v}"),
            Construction::Complete { r, n } => format!("complete_{r}_{n}"),
            Construction::TwoCliques { n } => format!("two_cliques_{n}"),
            Construction::LooseCycle { r, k } => format!("loose_cycle_{r}_{k}"),
            Construction::Sample { r, n, t, seed, .. } => format!("sample_{r}_{n}_{t}_{seed}"),
        }
    }
}
