//! Property tests over small random hypergraphs.

use itertools::Itertools;
use proptest::prelude::*;

use hyperspan_core::certificates::{validate_berge_cycle, validate_loose_walk, validate_matching, Matching, Span};
use hyperspan_core::format::{parse_hg, write_hg};
use hyperspan_core::hypergraph::{codegree_prune, degree_profile, Hypergraph};
use hyperspan_core::lab::canonical_form;
use hyperspan_core::procedures::{augment_step_3, augment_step_r, c43_switch_fixpoint, AugmentationState};
use hyperspan_core::solvers::tiling::{max_c43_tiling, validate_tiling, TileKind, Tiling};
use hyperspan_core::solvers::{
    find_berge_hamiltonian_cycle, find_loose_hamiltonian_cycle, has_perfect_matching, max_matching,
};

/// An r-graph on n vertices given by a selection mask over all r-subsets.
fn hypergraph(r: usize, n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Hypergraph> {
    n.prop_flat_map(move |n| {
        let subsets: Vec<Vec<usize>> = (0..n).combinations(r).collect();
        proptest::collection::vec(any::<bool>(), subsets.len()).prop_map(move |keep| {
            let edges: Vec<Vec<usize>> =
                subsets.iter().zip(&keep).filter(|(_, &k)| k).map(|(e, _)| e.clone()).collect();
            Hypergraph::new(r, n, edges).unwrap()
        })
    })
}

fn greedy_matching(h: &Hypergraph, skip: usize) -> Matching {
    let mut used = vec![false; h.n()];
    let mut edges = Vec::new();
    for e in h.edges().iter().skip(skip) {
        if e.iter().all(|&v| !used[v]) {
            e.iter().for_each(|&v| used[v] = true);
            edges.push(e.clone());
        }
    }
    Matching::new(edges)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hg_format_round_trips(h in hypergraph(3, 3..=8)) {
        prop_assert_eq!(parse_hg(&write_hg(&h)).unwrap(), h);
    }

    #[test]
    fn relabeling_keeps_the_profile(h in hypergraph(3, 4..=7), seed in any::<u64>()) {
        let n = h.n();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.rotate_left(seed as usize % n);
        let g = h.relabel(&perm).unwrap();
        let (a, b) = (degree_profile(&h), degree_profile(&g));
        prop_assert_eq!(a.delta_pos_codeg, b.delta_pos_codeg);
        prop_assert_eq!(a.delta1, b.delta1);
        prop_assert_eq!(canonical_form(&h).unwrap(), canonical_form(&g).unwrap());
    }

    #[test]
    fn prune_meets_its_floor(h in hypergraph(3, 4..=7), t in 0usize..5) {
        let p = codegree_prune(&h, t);
        prop_assert!(p.is_empty() || degree_profile(&p).delta_pos_codeg >= t);
        prop_assert!(p.edges().iter().all(|e| h.contains_edge(e)));
        prop_assert_eq!(codegree_prune(&p, t), p);
    }

    #[test]
    fn solver_certificates_validate(h in hypergraph(3, 4..=9)) {
        if let Some(m) = has_perfect_matching(&h) {
            prop_assert!(validate_matching(&h, &m, Span::Spanning).valid);
        }
        prop_assert!(validate_matching(&h, &max_matching(&h), Span::Any).valid);
        if let Some(c) = find_berge_hamiltonian_cycle(&h) {
            prop_assert!(validate_berge_cycle(&h, &c, Span::Spanning).valid);
        }
        if let Some(c) = find_loose_hamiltonian_cycle(&h) {
            prop_assert!(validate_loose_walk(&h, &c, Span::Spanning).valid);
        }
    }

    #[test]
    fn augmentation_strictly_grows(h in hypergraph(3, 6..=9), skip in 0usize..4) {
        let m = greedy_matching(&h, skip);
        if let Some(a) = augment_step_3(&h, &mut AugmentationState::new(&h, m.clone())).unwrap() {
            prop_assert!(a.matching.size() > m.size());
            prop_assert!(validate_matching(&h, &a.matching, Span::Any).valid);
        }
        if let Some(a) = augment_step_r(&h, &mut AugmentationState::new(&h, m.clone())) {
            prop_assert!(a.matching.size() > m.size());
            prop_assert!(a.removed.len() < h.r());
            prop_assert!(validate_matching(&h, &a.matching, Span::Any).valid);
        }
        prop_assert!(m.size() <= max_matching(&h).size());
    }

    #[test]
    fn switching_never_loses_tiles(h in hypergraph(3, 4..=8)) {
        let empty = Tiling::new(&h, TileKind::C43, Vec::new(), false);
        let out = c43_switch_fixpoint(&h, &empty).unwrap();
        prop_assert!(validate_tiling(&h, &out).valid);
        prop_assert!(out.size() <= max_c43_tiling(&h).unwrap().size());
    }
}
