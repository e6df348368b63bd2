//! Hamiltonian cycles in graphs by the path-closing argument.
//!
//! Grow a maximal path, close it into a cycle through a crossing pair
//! (p₀ ~ p_{i+1}, p_i ~ p_k), and if vertices remain, open the cycle at a
//! vertex with an outside neighbor to get a longer path. With minimum degree
//! at least n/2 every step succeeds. Below that the procedure also tries
//! Pósa rotations of the path end before giving up.

use std::collections::HashSet;

use crate::certificates::BergeCycle;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// A Hamiltonian cycle of the graph `g`, or None if the procedure gets stuck.
///
/// Always succeeds when δ(g) ≥ n/2.
pub fn dirac_cycle(g: &Hypergraph) -> Result<Option<BergeCycle>> {
    if g.r() != 2 {
        return Err(Error::WrongUniformity {
            expected: 2,
            found: g.r(),
        });
    }
    let n = g.n();
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "a Hamiltonian cycle needs at least 3 vertices, got {n}"
        )));
    }
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|v| {
            let mut row = vec![false; n];
            for u in g.neighbors(v) {
                row[u] = true;
            }
            row
        })
        .collect();
    let mut path = vec![0];
    loop {
        extend_both_ends(&adj, &mut path);
        let Some(cycle) = close_with_rotations(&adj, &mut path) else {
            return Ok(None);
        };
        if cycle.len() == n {
            let edges = (0..n)
                .map(|i| {
                    let (a, b) = (cycle[i], cycle[(i + 1) % n]);
                    vec![a.min(b), a.max(b)]
                })
                .collect();
            return Ok(Some(BergeCycle {
                vertices: cycle,
                edges,
            }));
        }
        let on_cycle: HashSet<usize> = cycle.iter().copied().collect();
        let opening = cycle.iter().enumerate().find_map(|(j, &c)| {
            (0..n)
                .find(|&w| !on_cycle.contains(&w) && adj[c][w])
                .map(|w| (j, w))
        });
        let Some((j, w)) = opening else {
            // disconnected
            return Ok(None);
        };
        let k = cycle.len();
        path = std::iter::once(w)
            .chain((0..k).map(|t| cycle[(j + t) % k]))
            .collect();
    }
}

fn extend_both_ends(adj: &[Vec<bool>], path: &mut Vec<usize>) {
    let n = adj.len();
    let mut on_path = vec![false; n];
    for &v in path.iter() {
        on_path[v] = true;
    }
    loop {
        let last = *path.last().expect("nonempty path");
        if let Some(w) = (0..n).find(|&w| !on_path[w] && adj[last][w]) {
            on_path[w] = true;
            path.push(w);
            continue;
        }
        let first = path[0];
        if let Some(w) = (0..n).find(|&w| !on_path[w] && adj[first][w]) {
            on_path[w] = true;
            path.insert(0, w);
            continue;
        }
        return;
    }
}

/// A cycle on the vertices of `path` via a crossing pair.
fn close(adj: &[Vec<bool>], path: &[usize]) -> Option<Vec<usize>> {
    let k = path.len();
    if k < 3 {
        return None;
    }
    let (first, last) = (path[0], path[k - 1]);
    if adj[first][last] {
        return Some(path.to_vec());
    }
    (0..k - 1)
        .find(|&i| adj[first][path[i + 1]] && adj[path[i]][last])
        .map(|i| {
            let mut cycle = path[..=i].to_vec();
            cycle.extend(path[i + 1..].iter().rev());
            cycle
        })
}

/// Tries to close the path, rotating its end (p₀ fixed) when the direct
/// crossing pair is missing. A rotation whose new end has an outside
/// neighbor is extended instead. Returns the cycle, leaving `path` as the
/// path it was closed from.
fn close_with_rotations(adj: &[Vec<bool>], path: &mut Vec<usize>) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = std::collections::VecDeque::from([path.clone()]);
    let budget = 4 * n * n;
    while let Some(current) = queue.pop_front() {
        if let Some(cycle) = close(adj, &current) {
            *path = current;
            return Some(cycle);
        }
        if seen.len() >= budget {
            break;
        }
        let k = current.len();
        let last = current[k - 1];
        let on_path: HashSet<usize> = current.iter().copied().collect();
        if (0..n).any(|w| !on_path.contains(&w) && adj[last][w]) {
            let mut longer = current.clone();
            extend_both_ends(adj, &mut longer);
            *path = longer;
            return close_with_rotations(adj, path);
        }
        for i in 0..k.saturating_sub(2) {
            if adj[current[i]][last] {
                let mut rotated = current[..=i].to_vec();
                rotated.extend(current[i + 1..].iter().rev());
                if seen.insert(rotated.clone()) {
                    queue.push_back(rotated);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::{validate_berge_cycle, Span};
    use crate::constructions::{complete, make_huv, sample_with_floor};
    use crate::hypergraph::degree_profile;
    use crate::solvers::find_berge_hamiltonian_cycle;

    #[test]
    fn complete_graph() {
        let g = complete(2, 5).unwrap();
        let c = dirac_cycle(&g).unwrap().unwrap();
        assert!(validate_berge_cycle(&g, &c, Span::Spanning).valid);
    }

    #[test]
    fn below_threshold_construction() {
        let (g, _) = make_huv(2, 6, 4).unwrap();
        assert!(dirac_cycle(&g).unwrap().is_none());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(dirac_cycle(&complete(2, 2).unwrap()).is_err());
        assert!(dirac_cycle(&complete(3, 5).unwrap()).is_err());
    }

    #[test]
    fn dense_random_graphs() {
        let mut checked = 0;
        for seed in 0..200 {
            let g = sample_with_floor(2, 10, 0, 0.7, seed).unwrap();
            if degree_profile(&g).delta1 < 5 {
                continue;
            }
            checked += 1;
            let c = dirac_cycle(&g).unwrap().expect("minimum degree at least n/2");
            assert!(validate_berge_cycle(&g, &c, Span::Spanning).valid);
            assert!(find_berge_hamiltonian_cycle(&g).is_some());
        }
        assert!(checked > 10);
    }

    #[test]
    fn sparse_graphs_never_give_invalid_cycles() {
        for seed in 0..100 {
            let g = sample_with_floor(2, 8, 0, 0.45, seed).unwrap();
            if let Some(c) = dirac_cycle(&g).unwrap() {
                assert!(validate_berge_cycle(&g, &c, Span::Spanning).valid);
            }
        }
    }
}
