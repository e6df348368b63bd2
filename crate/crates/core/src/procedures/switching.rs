//! Local improvement of C₄³ tilings by switching.
//!
//! Let S be the uncovered vertices. A switching configuration for a tile C
//! is a C₄³ copy inside S ∪ V(C) that uses vertices of S. Two shapes matter
//! most: a co-degree pair ab in S with two vertices p, q of C such that abp
//! and abq are edges, and a cherry ca, cb in S with one vertex w of C such
//! that caw and cbw are edges. Swapping C for one configuration keeps the
//! size; two vertex-disjoint configurations on the same C, or a copy lying
//! entirely in S, give a larger tiling.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::solvers::tiling::{c43_candidates, C43Copy, Tile, TileKind, Tiling};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConfigShape {
    /// Shared pair in S, both other vertices in C.
    PairInS,
    /// Shared pair of one S vertex and one C vertex, other vertices in S.
    Cherry,
    Other,
}

pub fn config_shape(copy: &C43Copy, in_s: &[bool]) -> ConfigShape {
    let a = &copy.edges[0];
    let b = &copy.edges[1];
    let shared: Vec<Vertex> = a.iter().copied().filter(|v| b.contains(v)).collect();
    let thirds: Vec<Vertex> = copy.vertices.iter().copied().filter(|v| !shared.contains(v)).collect();
    let shared_in_s = shared.iter().filter(|&&v| in_s[v]).count();
    let thirds_in_s = thirds.iter().filter(|&&v| in_s[v]).count();
    match (shared_in_s, thirds_in_s) {
        (2, 0) => ConfigShape::PairInS,
        (1, 2) => ConfigShape::Cherry,
        _ => ConfigShape::Other,
    }
}

/// Switching configurations for the tile with vertex set `tile`.
pub fn switching_configurations(h: &Hypergraph, tiling: &Tiling, tile: &[Vertex]) -> Vec<C43Copy> {
    let mut in_s = vec![false; h.n()];
    for &v in &tiling.uncovered {
        in_s[v] = true;
    }
    candidates_within(&c43_candidates(h), &in_s, tile)
}

fn candidates_within(all: &[C43Copy], in_s: &[bool], tile: &[Vertex]) -> Vec<C43Copy> {
    all.iter()
        .filter(|c| {
            c.vertices.iter().all(|&v| in_s[v] || tile.contains(&v)) && c.vertices.iter().any(|&v| in_s[v])
        })
        .cloned()
        .collect()
}

fn disjoint(a: &C43Copy, b: &C43Copy) -> bool {
    a.vertices.iter().all(|v| !b.vertices.contains(v))
}

fn tile_vertices(t: &Tile) -> Vec<Vertex> {
    t.vertices().to_vec()
}

fn rebuild(h: &Hypergraph, members: Vec<Tile>) -> Tiling {
    Tiling::new(h, TileKind::C43, members, false)
}

/// A strictly larger tiling from a copy inside S or two disjoint
/// configurations on one tile.
fn gain(h: &Hypergraph, all: &[C43Copy], tiling: &Tiling) -> Option<Tiling> {
    let mut in_s = vec![false; h.n()];
    for &v in &tiling.uncovered {
        in_s[v] = true;
    }
    if let Some(c) = all.iter().find(|c| c.vertices.iter().all(|&v| in_s[v])) {
        let mut members = tiling.members.clone();
        members.push(Tile::C43(c.clone()));
        return Some(rebuild(h, members));
    }
    for (i, tile) in tiling.members.iter().enumerate() {
        let configs = candidates_within(all, &in_s, &tile_vertices(tile));
        for (a, ca) in configs.iter().enumerate() {
            for cb in &configs[a + 1..] {
                if disjoint(ca, cb) {
                    let mut members = tiling.members.clone();
                    members.remove(i);
                    members.push(Tile::C43(ca.clone()));
                    members.push(Tile::C43(cb.clone()));
                    return Some(rebuild(h, members));
                }
            }
        }
    }
    None
}

/// One improvement attempt: a direct gain move, or else an equal-size swap
/// of a tile for one of its configurations followed by a gain move. Returns
/// the input unchanged when neither exists.
pub fn c43_switch_augment(h: &Hypergraph, tiling: &Tiling) -> Result<Tiling> {
    if h.r() != 3 {
        return Err(Error::WrongUniformity {
            expected: 3,
            found: h.r(),
        });
    }
    if tiling.kind != TileKind::C43 {
        return Err(Error::InvalidParameter("switching needs a C43 tiling".into()));
    }
    let all = c43_candidates(h);
    if let Some(better) = gain(h, &all, tiling) {
        return Ok(better);
    }
    let mut in_s = vec![false; h.n()];
    for &v in &tiling.uncovered {
        in_s[v] = true;
    }
    for (i, tile) in tiling.members.iter().enumerate() {
        for config in candidates_within(&all, &in_s, &tile_vertices(tile)) {
            let mut members = tiling.members.clone();
            members[i] = Tile::C43(config);
            let swapped = rebuild(h, members);
            if let Some(better) = gain(h, &all, &swapped) {
                return Ok(better);
            }
        }
    }
    Ok(tiling.clone())
}

/// Applies [`c43_switch_augment`] until the size stops growing.
pub fn c43_switch_fixpoint(h: &Hypergraph, tiling: &Tiling) -> Result<Tiling> {
    let mut current = tiling.clone();
    loop {
        let next = c43_switch_augment(h, &current)?;
        if next.size() <= current.size() {
            return Ok(current);
        }
        current = next;
    }
}
