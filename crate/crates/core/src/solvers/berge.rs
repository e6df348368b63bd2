//! Hamiltonian Berge cycles by backtracking over vertex orders.
//!
//! The search grows a path along the 2-shadow (pairs that share an edge) and
//! keeps a system of distinct representatives assigning a private host edge
//! to every consecutive pair. Each extension adds one pair, so one augmenting
//! path restores the assignment or proves the extension infeasible.

use super::{check_cycle_limit, full_mask, Budget, SolveOptions, Solved, Verdict};
use crate::certificates::BergeCycle;
use crate::error::Result;
use crate::hypergraph::Hypergraph;

/// A Hamiltonian Berge cycle if one exists. Panics above the size guardrail.
pub fn find_berge_hamiltonian_cycle(h: &Hypergraph) -> Option<BergeCycle> {
    find_berge_hamiltonian_cycle_with(h, &SolveOptions::default())
        .expect("instance within the cycle-solver guardrail")
        .verdict
        .into_option()
}

pub fn find_berge_hamiltonian_cycle_with(
    h: &Hypergraph,
    opts: &SolveOptions,
) -> Result<Solved<BergeCycle>> {
    check_cycle_limit(h, opts, "Berge cycle search")?;
    let mut budget = Budget::new(opts.deadline);
    let n = h.n();
    let trivially_absent = n < 2 || (h.r() == 2 && n < 3) || h.edge_count() < n;
    if trivially_absent {
        return Ok(Solved {
            verdict: Verdict::No,
            stats: budget.stats(),
        });
    }
    let mut search = BergeSearch::new(h, &mut budget);
    let outcome = search.run();
    let verdict = match outcome {
        None => Verdict::Unknown,
        Some(false) => Verdict::No,
        Some(true) => Verdict::Yes(search.certificate()),
    };
    Ok(Solved {
        verdict,
        stats: budget.stats(),
    })
}

struct BergeSearch<'a> {
    h: &'a Hypergraph,
    n: usize,
    adj: Vec<u64>,
    /// Edge indices containing each pair, indexed by a·n + b.
    pair_edges: Vec<Vec<usize>>,
    /// Vertices of the path so far.
    path: Vec<usize>,
    /// owner[e] = index of the pair (path position) using edge e.
    owner: Vec<Option<usize>>,
    /// assigned[p] = edge used by pair p (pair p joins path[p] and path[p+1]).
    assigned: Vec<usize>,
    /// Expansion order of neighbors: ascending shadow degree, then label.
    order: Vec<Vec<usize>>,
    budget: &'a mut Budget,
}

impl<'a> BergeSearch<'a> {
    fn new(h: &'a Hypergraph, budget: &'a mut Budget) -> Self {
        let n = h.n();
        let mut adj = vec![0u64; n];
        let mut pair_edges = vec![Vec::new(); n * n];
        for (i, e) in h.edges().iter().enumerate() {
            for (x, &a) in e.iter().enumerate() {
                for &b in &e[x + 1..] {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                    pair_edges[a * n + b].push(i);
                    pair_edges[b * n + a].push(i);
                }
            }
        }
        let degree: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
        let order = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&u| adj[v] >> u & 1 == 1).collect();
                nb.sort_by_key(|&u| (degree[u], u));
                nb
            })
            .collect();
        Self {
            h,
            n,
            adj,
            pair_edges,
            path: Vec::with_capacity(n),
            owner: vec![None; h.edge_count()],
            assigned: Vec::with_capacity(n),
            order,
            budget,
        }
    }

    fn run(&mut self) -> Option<bool> {
        let start = (0..self.n)
            .min_by_key(|&v| (self.adj[v].count_ones(), v))
            .expect("n >= 2");
        if self.adj[start].count_ones() < 2 && !(self.n == 2 && self.adj[start] != 0) {
            return Some(false);
        }
        self.path.push(start);
        self.extend(1u64 << start)
    }

    /// Tries to give pair `p` (already appended to `assigned` as a placeholder)
    /// an edge, re-routing earlier pairs along an augmenting path. On success
    /// returns the list of (pair, previous edge) changes for undo.
    fn assign_pair(&mut self, p: usize, a: usize, b: usize) -> Option<Vec<(usize, usize)>> {
        let mut visited = vec![false; self.owner.len()];
        let mut log = Vec::new();
        if self.augment(p, a, b, &mut visited, &mut log) {
            Some(log)
        } else {
            None
        }
    }

    fn augment(
        &mut self,
        p: usize,
        a: usize,
        b: usize,
        visited: &mut [bool],
        log: &mut Vec<(usize, usize)>,
    ) -> bool {
        for idx in 0..self.pair_edges[a * self.n + b].len() {
            let e = self.pair_edges[a * self.n + b][idx];
            if visited[e] {
                continue;
            }
            visited[e] = true;
            let free = match self.owner[e] {
                None => true,
                Some(q) => {
                    let (qa, qb) = self.pair_vertices(q);
                    self.augment(q, qa, qb, visited, log)
                }
            };
            if free {
                log.push((p, self.assigned[p]));
                self.assigned[p] = e;
                self.owner[e] = Some(p);
                return true;
            }
        }
        false
    }

    fn pair_vertices(&self, p: usize) -> (usize, usize) {
        (self.path[p], self.path[(p + 1) % self.path.len()])
    }

    fn undo(&mut self, log: Vec<(usize, usize)>) {
        for (p, old) in log.into_iter().rev() {
            let current = self.assigned[p];
            if self.owner[current] == Some(p) {
                self.owner[current] = None;
            }
            self.assigned[p] = old;
            if old != usize::MAX {
                self.owner[old] = Some(p);
            }
        }
    }

    /// Every unvisited vertex keeps two neighbors among the unvisited vertices
    /// and the two path ends, and the unvisited part stays connected to the
    /// current end.
    fn feasible(&self, visited: u64) -> bool {
        let full = full_mask(self.n);
        let free = full & !visited;
        if free == 0 {
            return true;
        }
        let first = self.path[0];
        let last = *self.path.last().expect("nonempty path");
        let ends = (1u64 << first) | (1u64 << last);
        let mut rest = free;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (self.adj[u] & (free | ends)).count_ones() < 2 {
                return false;
            }
        }
        if self.adj[first] & free == 0 {
            return false;
        }
        let mut reached = self.adj[last] & free;
        let mut frontier = reached;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[u] & free & !reached;
            reached |= new;
            frontier |= new;
        }
        reached == free
    }

    fn extend(&mut self, visited: u64) -> Option<bool> {
        if !self.budget.tick() {
            return None;
        }
        let last = *self.path.last().expect("nonempty path");
        if self.path.len() == self.n {
            let first = self.path[0];
            // orientation: the second vertex precedes the last one by label
            if self.n > 2 && self.path[1] > last {
                return Some(false);
            }
            if self.adj[last] >> first & 1 == 0 {
                return Some(false);
            }
            let p = self.assigned.len();
            self.assigned.push(usize::MAX);
            match self.assign_pair(p, last, first) {
                Some(_) => return Some(true),
                None => {
                    self.assigned.pop();
                    return Some(false);
                }
            }
        }
        for idx in 0..self.order[last].len() {
            let next = self.order[last][idx];
            if visited >> next & 1 == 1 {
                continue;
            }
            let p = self.assigned.len();
            self.assigned.push(usize::MAX);
            self.path.push(next);
            let Some(log) = self.assign_pair(p, last, next) else {
                self.path.pop();
                self.assigned.pop();
                continue;
            };
            let nv = visited | (1u64 << next);
            if self.feasible(nv)
                && self.extend(nv)? { return Some(true) }
            self.undo(log);
            self.path.pop();
            self.assigned.pop();
        }
        Some(false)
    }

    fn certificate(&self) -> BergeCycle {
        BergeCycle {
            vertices: self.path.clone(),
            edges: self
                .assigned
                .iter()
                .map(|&e| self.h.edges()[e].clone())
                .collect(),
        }
    }
}
