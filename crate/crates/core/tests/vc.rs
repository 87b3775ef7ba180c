mod common;

use common::small_graph;
use oct_core::graph::coloring_after_deletion;
use oct_core::oracle::{brute_force_oct, brute_force_vc};
use oct_core::vc::{
    cover_from_oct, from_vc_solution, lp_half_integral, solve_oct_via_vc, solve_vc_exact,
    to_vc_instance, HalfValue, VcConfig,
};
use oct_core::{verify_oct, Graph};

fn is_cover(g: &Graph, c: &[usize]) -> bool {
    g.edges().all(|(u, v)| c.contains(&u) || c.contains(&v))
}

#[test]
fn doubled_cover_size_is_n_plus_opt() {
    for seed in 0..500 {
        let g = small_graph(seed, 1, 12);
        let (opt, _) = brute_force_oct(&g, 12).unwrap();
        let inst = to_vc_instance(&g);
        let (vc, cover) = brute_force_vc(&inst.graph, 24).unwrap();
        assert_eq!(vc, g.n() + opt);
        let s = from_vc_solution(&inst, &cover).unwrap();
        assert_eq!(s.len(), opt);
        assert!(verify_oct(&g, &s));
    }
}

#[test]
fn any_cover_maps_to_a_transversal() {
    for seed in 0..200 {
        let g = small_graph(seed, 2, 14);
        let inst = to_vc_instance(&g);
        // every vertex except one copy per matching edge, chosen by parity
        let cover: Vec<usize> = (0..inst.graph.n())
            .filter(|&x| !(x + seed as usize).is_multiple_of(5))
            .collect();
        if is_cover(&inst.graph, &cover) {
            assert!(verify_oct(&g, &from_vc_solution(&inst, &cover).unwrap()));
        }
        let all: Vec<usize> = (0..inst.graph.n()).collect();
        assert_eq!(
            from_vc_solution(&inst, &all).unwrap(),
            (0..g.n()).collect::<Vec<_>>()
        );
    }
}

#[test]
fn exact_solver_matches_oracle() {
    for seed in 0..300 {
        let g = small_graph(seed, 2, 16);
        let (opt, _) = brute_force_vc(&g, 16).unwrap();
        let r = solve_vc_exact(&g, &VcConfig::default()).unwrap();
        assert!(r.optimal);
        assert!(is_cover(&g, &r.cover));
        assert_eq!(r.cover.len(), opt, "seed {seed}");
        assert_eq!((r.lower, r.upper), (opt, opt));
    }
}

#[test]
fn exact_solver_on_doubled_instances() {
    for seed in 0..200 {
        let g = small_graph(seed, 2, 11);
        let (opt, _) = brute_force_oct(&g, 12).unwrap();
        let inst = to_vc_instance(&g);
        let r = solve_vc_exact(&inst.graph, &VcConfig::default()).unwrap();
        assert_eq!(r.cover.len(), g.n() + opt);
    }
}

#[test]
fn lp_bound_and_persistency() {
    for seed in 0..300 {
        let g = small_graph(seed, 1, 12);
        let x = lp_half_integral(&g);
        assert!(g.edges().all(|(u, v)| x[u].doubled() + x[v].doubled() >= 2));
        let doubled: usize = x.iter().map(|v| v.doubled()).sum();
        let (opt, _) = brute_force_vc(&g, 12).unwrap();
        assert!(doubled.div_ceil(2) <= opt && opt <= doubled);
        // some minimum cover holds every 1 and avoids every 0
        let ones: Vec<usize> = g.vertices().filter(|&v| x[v] == HalfValue::One).collect();
        let decided: Vec<usize> = g.vertices().filter(|&v| x[v] != HalfValue::Half).collect();
        let (rest, _) = g.without(&decided);
        let (rest_opt, _) = brute_force_vc(&rest, 12).unwrap();
        assert_eq!(ones.len() + rest_opt, opt, "seed {seed}");
    }
}

#[test]
fn transversal_gives_cover() {
    for seed in 0..100 {
        let g = small_graph(seed, 2, 12);
        let (_, s) = brute_force_oct(&g, 12).unwrap();
        let inst = to_vc_instance(&g);
        let cover = cover_from_oct(&g, &s).unwrap();
        assert!(is_cover(&inst.graph, &cover));
        assert_eq!(cover.len(), g.n() + s.len());
        assert!(coloring_after_deletion(&g, &s).is_some());
    }
}

#[test]
fn oct_route_end_to_end() {
    for seed in 0..300 {
        let g = small_graph(seed, 2, 14);
        let (opt, _) = brute_force_oct(&g, 14).unwrap();
        let r = solve_oct_via_vc(&g, &VcConfig::default(), seed).unwrap();
        assert!(r.is_consistent() && r.optimal);
        assert_eq!(r.solution.len(), opt, "seed {seed}");
    }
}

#[test]
fn node_limit_reports_bounds() {
    for seed in 0..40 {
        let g = small_graph(seed, 30, 45);
        let cfg = VcConfig {
            node_limit: Some(3),
            ..VcConfig::default()
        };
        let r = solve_oct_via_vc(&g, &cfg, seed).unwrap();
        assert!(r.is_consistent());
        assert!(r.lower <= r.upper);
    }
}
