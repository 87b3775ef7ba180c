mod common;

use common::small_graph;
use oct_core::generators::tunable_oct;
use oct_core::heuristics::Heuristic;
use oct_core::io::write_canonical;
use oct_core::oracle::{brute_force_oct, brute_force_oct_avoiding};
use oct_core::reductions::{
    lift_solution, reduce_fixpoint, reduce_fixpoint_with, reduce_oct_rules, reduce_vc_rules,
    reduce_vc_rules_with, ReduceOptions, ReductionPartition,
};
use oct_core::{verify_oct, Graph};

const CAP: usize = 16;

fn assert_partition(p: &ReductionPartition) {
    let mut all: Vec<usize> = [&p.v_removed, &p.v_oct, &p.v_bip, &p.v_rest]
        .into_iter()
        .flatten()
        .copied()
        .collect();
    all.sort_unstable();
    assert_eq!(all, (0..p.n).collect::<Vec<_>>(), "not a partition");
    let mut kept: Vec<usize> = p.v_bip.iter().chain(&p.v_rest).copied().collect();
    kept.sort_unstable();
    assert_eq!(kept, p.lift_map);
    assert_eq!(p.reduced.n(), p.lift_map.len());
}

/// Checks the optimum shift, lifting of an optimal reduced solution, and
/// that one optimum avoids every `Vb` vertex.
fn check_sound(g: &Graph, p: &ReductionPartition) {
    assert_partition(p);
    let (opt, _) = brute_force_oct(g, CAP).unwrap();
    let (opt_r, witness) = brute_force_oct(&p.reduced, CAP).unwrap();
    assert_eq!(opt, opt_r + p.v_oct.len(), "optimum shifted for {g:?}");
    let lifted = lift_solution(p, &witness).unwrap();
    assert!(verify_oct(g, &lifted));
    assert_eq!(lifted.len(), opt);
    if !p.v_bip.is_empty() {
        assert_eq!(
            brute_force_oct_avoiding(g, &p.v_bip, CAP).unwrap(),
            Some(opt)
        );
    }
}

#[test]
fn fixpoint_preserves_optimum() {
    for seed in 0..500 {
        let g = small_graph(seed, 3, 12);
        check_sound(&g, &reduce_fixpoint(&g));
    }
}

#[test]
fn graph_rules_preserve_optimum() {
    for seed in 1000..1200 {
        let g = small_graph(seed, 3, 12);
        check_sound(&g, &reduce_oct_rules(&g));
    }
}

#[test]
fn cover_rules_preserve_optimum() {
    for seed in 2000..2200 {
        let g = small_graph(seed, 3, 12);
        check_sound(&g, &reduce_vc_rules(&g));
    }
}

const STRONG: ReduceOptions = ReduceOptions { unconfined: true };

#[test]
fn fixpoint_with_unconfined_preserves_optimum() {
    for seed in 0..500 {
        let g = small_graph(seed, 3, 12);
        check_sound(&g, &reduce_fixpoint_with(&g, STRONG));
    }
}

#[test]
fn unconfined_cover_rules_preserve_optimum() {
    for seed in 3000..3300 {
        let g = small_graph(seed, 3, 12);
        check_sound(&g, &reduce_vc_rules_with(&g, STRONG));
    }
}

#[test]
fn tunable_instances() {
    for seed in 0..60 {
        let n_o = (seed % 4) as usize;
        let g = tunable_oct(12, 0.3 + 0.1 * (seed % 3) as f64, n_o, 0.5, seed).unwrap();
        check_sound(&g, &reduce_fixpoint(&g));
        check_sound(&g, &reduce_fixpoint_with(&g, STRONG));
    }
}

#[test]
fn any_feasible_reduced_set_lifts() {
    for seed in 0..500 {
        let g = small_graph(seed, 4, 30);
        for p in [reduce_fixpoint(&g), reduce_fixpoint_with(&g, STRONG)] {
            for h in Heuristic::ALL {
                let s = h.run(&p.reduced, seed).vertices;
                assert!(verify_oct(&p.reduced, &s));
                assert!(verify_oct(&g, &lift_solution(&p, &s).unwrap()));
            }
        }
    }
}

#[test]
fn triangle_survives_cover_rules() {
    let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let p = reduce_vc_rules(&g);
    assert!(p.v_oct.is_empty() && p.v_bip.is_empty());
    check_sound(&g, &p);
}

#[test]
fn twin_square_context() {
    // square 0-1-2-3 with degree-2 twins 1 and 3, attached to a triangle at
    // both 0 and 2
    let g = Graph::from_edges(
        6,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (0, 4),
            (4, 5),
            (5, 2),
            (4, 2),
        ],
    )
    .unwrap();
    let p = reduce_oct_rules(&g);
    assert!(p.v_removed.contains(&3));
    check_sound(&g, &p);
}

#[test]
fn deterministic_output() {
    for seed in 0..50 {
        let g = small_graph(seed, 10, 40);
        let a = reduce_fixpoint(&g);
        let b = reduce_fixpoint(&g);
        assert_eq!(a, b);
        assert_eq!(write_canonical(&a.reduced), write_canonical(&b.reduced));
        assert_eq!(a.to_json(), b.to_json());
    }
}

#[test]
fn irreducible_graph_is_identity() {
    let k5 = Graph::from_edges(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v)))).unwrap();
    let p = reduce_oct_rules(&k5);
    assert!(p.is_identity());
    assert_eq!(lift_solution(&p, &[1, 3]).unwrap(), vec![1, 3]);
}
