//! The vertex cover route: the auxiliary graph on two copies of every
//! vertex, solution mapping in both directions, and an exact solver.
//!
//! For `G = (V, E)` with `n` vertices the auxiliary graph has copies
//! `v1 = v` and `v2 = v + n`, both copies of every edge, and a matching edge
//! `v1 v2`. Its minimum cover has size `n + OPT`, and a vertex whose copies
//! are both covered belongs to the transversal.

mod lp;
mod solver;

use std::time::Instant;

pub use lp::{lp_half_integral, lp_lower_bound, HalfValue};
pub use solver::{solve_vc_exact, solve_vc_until, VcConfig, VcReport};
pub(crate) use solver::{Kernel, Op, Rules};

use crate::error::{OctError, Result};
use crate::graph::{coloring_after_deletion, Graph, Side};
use crate::heuristics::{ensemble, EnsembleConfig};
use crate::reductions::{lift_solution, reduce_fixpoint};
use crate::solution::{Deadline, OctSolution, SolverReport, Source};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VcInstance {
    pub graph: Graph,
    /// Vertex count of the original graph.
    pub n: usize,
}

impl VcInstance {
    /// Ids of the two copies of original vertex `v`.
    pub fn copies(&self, v: usize) -> (usize, usize) {
        (v, v + self.n)
    }
}

pub fn to_vc_instance(g: &Graph) -> VcInstance {
    let n = g.n();
    let edges = g
        .edges()
        .flat_map(|(u, v)| [(u, v), (u + n, v + n)])
        .chain((0..n).map(|v| (v, v + n)));
    VcInstance {
        graph: Graph::from_edges(2 * n, edges).expect("copies of a simple graph"),
        n,
    }
}

/// Vertices whose two copies are both in the cover.
pub fn from_vc_solution(inst: &VcInstance, cover: &[usize]) -> Result<Vec<usize>> {
    let g = &inst.graph;
    let mut inside = vec![false; g.n()];
    for &v in cover {
        if v >= g.n() {
            return Err(OctError::Contract(format!("cover vertex {v} out of range")));
        }
        inside[v] = true;
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| !inside[u] && !inside[v]) {
        return Err(OctError::Contract(format!("edge {u}-{v} is uncovered")));
    }
    Ok((0..inst.n)
        .filter(|&v| inside[v] && inside[v + inst.n])
        .collect())
}

/// Cover of size `n + |s|` built from a feasible transversal `s`: both
/// copies of `s`, the first copy of left vertices, the second of right ones.
pub fn cover_from_oct(g: &Graph, s: &[usize]) -> Result<Vec<usize>> {
    let coloring = coloring_after_deletion(g, s)
        .ok_or_else(|| OctError::Contract("not an odd cycle transversal".into()))?;
    let n = g.n();
    let mut cover: Vec<usize> = g
        .vertices()
        .flat_map(|v| match coloring.side(v) {
            Side::Deleted => vec![v, v + n],
            Side::Left => vec![v],
            Side::Right => vec![v + n],
        })
        .collect();
    cover.sort_unstable();
    Ok(cover)
}

/// Solves OCT end to end through the vertex cover route: reduce, transform,
/// solve exactly, map back and lift. The incumbent is warm-started from a
/// short heuristic run.
pub fn solve_oct_via_vc(g: &Graph, cfg: &VcConfig, seed: u64) -> Result<SolverReport> {
    solve_oct_via_vc_until(g, cfg, seed, &Deadline::from_secs(cfg.timeout))
}

pub fn solve_oct_via_vc_until(
    g: &Graph,
    cfg: &VcConfig,
    seed: u64,
    deadline: &Deadline,
) -> Result<SolverReport> {
    let start = Instant::now();
    let partition = reduce_fixpoint(g);
    let r = &partition.reduced;
    let inst = to_vc_instance(r);
    let warm = ensemble(r, &EnsembleConfig::with_iterations(seed, 16));
    let mut vc_cfg = cfg.clone();
    if vc_cfg.initial.is_none() {
        vc_cfg.initial = Some(cover_from_oct(r, &warm.solution.vertices)?);
    }
    let vc = solve_vc_until(&inst.graph, &vc_cfg, deadline)?;
    let s_reduced = from_vc_solution(&inst, &vc.cover)?;
    let s = lift_solution(&partition, &s_reduced)?;
    let forced = partition.v_oct.len();
    let solution = OctSolution::certified(g, s, Source::Vc);
    let upper = solution.len();
    Ok(SolverReport {
        lower: (vc.lower.saturating_sub(r.n()) + forced).min(upper),
        upper,
        optimal: vc.optimal,
        solution,
        elapsed: start.elapsed().as_secs_f64(),
        seed,
        termination: vc.termination,
        iterations: vc.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::verify_oct;

    #[test]
    fn single_edge_instance() {
        let inst = to_vc_instance(&path(2));
        assert_eq!(
            inst.graph.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (1, 3), (2, 3)]
        );
        assert_eq!(inst.copies(1), (1, 3));
    }

    #[test]
    fn empty_graph_instance() {
        let inst = to_vc_instance(&Graph::empty(3));
        assert_eq!((inst.graph.n(), inst.graph.m()), (6, 3));
        assert_eq!(
            solve_vc_exact(&inst.graph, &VcConfig::default())
                .unwrap()
                .upper,
            3
        );
    }

    #[test]
    fn mapping_back() {
        let inst = to_vc_instance(&path(2));
        assert_eq!(from_vc_solution(&inst, &[0, 1, 2, 3]).unwrap(), vec![0, 1]);
        assert_eq!(
            from_vc_solution(&inst, &[0, 3]).unwrap(),
            Vec::<usize>::new()
        );
        assert!(from_vc_solution(&inst, &[0]).is_err());
    }

    #[test]
    fn cover_from_transversal() {
        let g = cycle(5);
        let cover = cover_from_oct(&g, &[0]).unwrap();
        assert_eq!(cover.len(), 6);
        let inst = to_vc_instance(&g);
        assert_eq!(from_vc_solution(&inst, &cover).unwrap(), vec![0]);
    }

    #[test]
    fn end_to_end() {
        for (g, opt) in [
            (complete(5), 3),
            (cycle(7), 1),
            (cycle(8), 0),
            (complete(4), 2),
        ] {
            let r = solve_oct_via_vc(&g, &VcConfig::default(), 1).unwrap();
            assert!(r.is_consistent() && r.optimal);
            assert_eq!(r.upper, opt);
            assert!(verify_oct(&g, &r.solution.vertices));
        }
    }
}
