//! Preprocessing that splits `V` into removable (`Vr`), forced transversal
//! (`Vo`), forced bipartite (`Vb`) and undecided (`V'`) vertices.
//!
//! Graph-level rules:
//! - degree: vertices of degree at most one are removed;
//! - block: edges of bipartite biconnected blocks lie on no odd cycle and are
//!   removed, and so are vertices left in no non-bipartite block;
//! - twin: of two degree-2 vertices with the same two non-adjacent
//!   neighbors, the higher id is removed.
//!
//! Cover-level rules run on the doubled instance (see [`crate::vc`]): degree
//! one, dominance and LP persistency, plus unconfined vertices when
//! [`ReduceOptions::unconfined`] is set, applied one after another so that
//! every decision is consistent with a single minimum cover. A vertex with
//! both copies forced in goes to `Vo`; one with a copy forced out is
//! labeled `Vb`.
//!
//! Every application is logged, and lifting replays the log backwards.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{OctError, Result};
use crate::graph::Graph;
use crate::solution::{OctSolution, SolverReport};
use crate::vc::{to_vc_instance, Kernel, Op, Rules};

/// Optional rules beyond the default set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReduceOptions {
    /// Include unconfined copies on the doubled instance. Strictly stronger
    /// than dominance; resolves e.g. a triangle completely.
    pub unconfined: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Degree,
    Block,
    Twin,
    Isolated,
}

/// One logged rule application, in original ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum Step {
    RemoveVertex {
        vertex: usize,
        rule: Rule,
    },
    RemoveEdge {
        u: usize,
        v: usize,
    },
    Force {
        vertex: usize,
    },
    /// `removed` and `kept` both had exactly the neighbors `u` and `w`.
    Twin {
        removed: usize,
        kept: usize,
        u: usize,
        w: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionPartition {
    /// Vertex count of the input graph.
    pub n: usize,
    pub v_removed: Vec<usize>,
    pub v_oct: Vec<usize>,
    pub v_bip: Vec<usize>,
    pub v_rest: Vec<usize>,
    /// Edges deleted while both endpoints stayed in the graph.
    pub e_removed: Vec<(usize, usize)>,
    /// Graph on `Vb ∪ V'`, ids ascending in original order.
    pub reduced: Graph,
    /// Reduced id to original id.
    pub lift_map: Vec<usize>,
    pub log: Vec<Step>,
}

#[derive(Serialize)]
struct PartitionRecord<'a> {
    n: usize,
    v_removed: &'a [usize],
    v_oct: &'a [usize],
    v_bip: &'a [usize],
    v_rest: &'a [usize],
    e_removed: &'a [(usize, usize)],
    reduced_n: usize,
    reduced_m: usize,
    lift_map: &'a [usize],
    log: &'a [Step],
}

impl ReductionPartition {
    /// Deterministic JSON record of the partition.
    pub fn to_json(&self) -> String {
        let record = PartitionRecord {
            n: self.n,
            v_removed: &self.v_removed,
            v_oct: &self.v_oct,
            v_bip: &self.v_bip,
            v_rest: &self.v_rest,
            e_removed: &self.e_removed,
            reduced_n: self.reduced.n(),
            reduced_m: self.reduced.m(),
            lift_map: &self.lift_map,
            log: &self.log,
        };
        serde_json::to_string_pretty(&record).expect("plain data serializes")
    }

    /// True when no rule fired.
    pub fn is_identity(&self) -> bool {
        self.log.is_empty()
    }
}

struct Work {
    adj: Vec<BTreeSet<usize>>,
    alive: Vec<bool>,
    removed: Vec<usize>,
    forced: Vec<usize>,
    e_removed: Vec<(usize, usize)>,
    log: Vec<Step>,
}

impl Work {
    fn new(g: &Graph) -> Self {
        Work {
            adj: g
                .vertices()
                .map(|v| g.neighbors(v).iter().copied().collect())
                .collect(),
            alive: vec![true; g.n()],
            removed: Vec::new(),
            forced: Vec::new(),
            e_removed: Vec::new(),
            log: Vec::new(),
        }
    }

    fn live(&self) -> Vec<usize> {
        (0..self.adj.len()).filter(|&v| self.alive[v]).collect()
    }

    fn delete(&mut self, v: usize) {
        for u in std::mem::take(&mut self.adj[v]) {
            self.adj[u].remove(&v);
        }
        self.alive[v] = false;
    }

    fn remove_vertex(&mut self, v: usize, rule: Rule) {
        self.delete(v);
        self.removed.push(v);
        self.log.push(Step::RemoveVertex { vertex: v, rule });
    }

    fn force(&mut self, v: usize) {
        self.delete(v);
        self.forced.push(v);
        self.log.push(Step::Force { vertex: v });
    }

    fn degree_rule(&mut self) -> bool {
        let mut queue: VecDeque<usize> = self
            .live()
            .into_iter()
            .filter(|&v| self.adj[v].len() <= 1)
            .collect();
        let mut changed = false;
        while let Some(v) = queue.pop_front() {
            if !self.alive[v] || self.adj[v].len() > 1 {
                continue;
            }
            let next = self.adj[v].first().copied();
            self.remove_vertex(v, Rule::Degree);
            changed = true;
            if let Some(u) = next.filter(|&u| self.adj[u].len() <= 1) {
                queue.push_back(u);
            }
        }
        changed
    }

    /// Biconnected blocks of the live graph as edge lists.
    fn blocks(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.adj.len();
        let nbrs: Vec<Vec<usize>> = self
            .adj
            .iter()
            .map(|s| s.iter().copied().collect())
            .collect();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut clock = 0;
        let mut blocks = Vec::new();
        let mut edges = Vec::new();
        for root in self.live() {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = clock;
            low[root] = clock;
            clock += 1;
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(&(v, parent, i)) = stack.last() {
                if i < nbrs[v].len() {
                    stack.last_mut().unwrap().2 += 1;
                    let w = nbrs[v][i];
                    if w == parent {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        edges.push((v, w));
                        disc[w] = clock;
                        low[w] = clock;
                        clock += 1;
                        stack.push((w, v, 0));
                    } else if disc[w] < disc[v] {
                        edges.push((v, w));
                        low[v] = low[v].min(disc[w]);
                    }
                    continue;
                }
                stack.pop();
                if parent == usize::MAX {
                    continue;
                }
                low[parent] = low[parent].min(low[v]);
                if low[v] >= disc[parent] {
                    let mut block = Vec::new();
                    while let Some(e) = edges.pop() {
                        block.push(e);
                        if e == (parent, v) {
                            break;
                        }
                    }
                    blocks.push(block);
                }
            }
        }
        blocks
    }

    fn block_rule(&mut self) -> bool {
        let n = self.adj.len();
        let mut in_odd = vec![false; n];
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut doomed = Vec::new();
        for block in self.blocks() {
            let mut local: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &(u, v) in &block {
                local.entry(u).or_default().push(v);
                local.entry(v).or_default().push(u);
            }
            let start = *local.keys().next().unwrap();
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            let mut odd = false;
            while let Some(v) = queue.pop_front() {
                let c = color[v].unwrap();
                for &u in &local[&v] {
                    match color[u] {
                        None => {
                            color[u] = Some(!c);
                            queue.push_back(u);
                        }
                        Some(cu) if cu == c => odd = true,
                        Some(_) => {}
                    }
                }
            }
            for &v in local.keys() {
                color[v] = None;
                in_odd[v] |= odd;
            }
            if !odd {
                doomed.extend(block);
            }
        }
        let mut changed = false;
        doomed.sort_unstable_by_key(|&(u, v)| (u.min(v), u.max(v)));
        for (u, v) in doomed {
            let (u, v) = (u.min(v), u.max(v));
            if in_odd[u] && in_odd[v] {
                self.adj[u].remove(&v);
                self.adj[v].remove(&u);
                self.e_removed.push((u, v));
                self.log.push(Step::RemoveEdge { u, v });
                changed = true;
            }
        }
        for v in self.live() {
            if !in_odd[v] {
                self.remove_vertex(v, Rule::Block);
                changed = true;
            }
        }
        changed
    }

    fn twin_shape(&self, x: usize) -> Option<(usize, usize)> {
        if !self.alive[x] || self.adj[x].len() != 2 {
            return None;
        }
        let mut it = self.adj[x].iter();
        let (u, w) = (*it.next().unwrap(), *it.next().unwrap());
        (!self.adj[u].contains(&w)).then_some((u, w))
    }

    fn twin_rule(&mut self) -> bool {
        let mut classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for v in self.live() {
            if let Some(key) = self.twin_shape(v) {
                classes.entry(key).or_default().push(v);
            }
        }
        let mut changed = false;
        for ((u, w), members) in classes {
            let kept = members[0];
            for &x in &members[1..] {
                // earlier removals may have reshaped this class
                if self.twin_shape(kept) == Some((u, w)) && self.twin_shape(x) == Some((u, w)) {
                    self.delete(x);
                    self.removed.push(x);
                    self.log.push(Step::Twin {
                        removed: x,
                        kept,
                        u,
                        w,
                    });
                    changed = true;
                }
            }
        }
        changed
    }

    fn oct_pass(&mut self) -> bool {
        let mut changed = false;
        loop {
            let a = self.degree_rule();
            let b = self.block_rule();
            let c = self.twin_rule();
            if !(a || b || c) {
                return changed;
            }
            changed = true;
        }
    }

    /// Cover-level rules on the doubled instance of the live graph. Returns
    /// whether the graph changed and the vertices labeled bipartite.
    fn vc_pass(&mut self, opts: ReduceOptions) -> (bool, Vec<usize>) {
        let mut changed = false;
        for v in self.live() {
            if self.adj[v].is_empty() {
                self.remove_vertex(v, Rule::Isolated);
                changed = true;
            }
        }
        let ids = self.live();
        let mut local = vec![usize::MAX; self.adj.len()];
        for (i, &v) in ids.iter().enumerate() {
            local[v] = i;
        }
        let edges = ids.iter().flat_map(|&v| {
            let local = &local;
            self.adj[v]
                .iter()
                .filter(move |&&u| u > v)
                .map(move |&u| (local[v], local[u]))
        });
        let g = Graph::from_edges(ids.len(), edges).expect("live subgraph");
        let inst = to_vc_instance(&g);
        let mut kernel = Kernel::new(&inst.graph);
        kernel.reduce(
            Rules {
                fold: false,
                unconfined: opts.unconfined,
                lp: true,
            },
            usize::MAX,
        );
        let k = ids.len();
        let mut inside = vec![false; 2 * k];
        let mut outside = vec![false; 2 * k];
        for op in kernel.trail() {
            match *op {
                Op::Include(x) => inside[x] = true,
                Op::Exclude(x) => outside[x] = true,
                Op::Fold { .. } => unreachable!("folding is off"),
            }
        }
        let mut bip = Vec::new();
        for i in 0..k {
            if inside[i] && inside[i + k] {
                self.force(ids[i]);
                changed = true;
            } else if outside[i] || outside[i + k] {
                bip.push(ids[i]);
            }
        }
        (changed, bip)
    }

    fn finish(self, n: usize, mut v_bip: Vec<usize>) -> ReductionPartition {
        let lift_map = self.live();
        let mut is_bip = vec![false; n];
        v_bip.retain(|&v| self.alive[v]);
        for &v in &v_bip {
            is_bip[v] = true;
        }
        let v_rest = lift_map.iter().copied().filter(|&v| !is_bip[v]).collect();
        let mut local = vec![usize::MAX; n];
        for (i, &v) in lift_map.iter().enumerate() {
            local[v] = i;
        }
        let edges = lift_map.iter().flat_map(|&v| {
            let local = &local;
            self.adj[v]
                .iter()
                .filter(move |&&u| u > v)
                .map(move |&u| (local[v], local[u]))
        });
        let reduced = Graph::from_edges(lift_map.len(), edges).expect("live subgraph");
        let mut v_removed = self.removed;
        v_removed.sort_unstable();
        let mut v_oct = self.forced;
        v_oct.sort_unstable();
        let mut e_removed = self.e_removed;
        e_removed.sort_unstable();
        ReductionPartition {
            n,
            v_removed,
            v_oct,
            v_bip,
            v_rest,
            e_removed,
            reduced,
            lift_map,
            log: self.log,
        }
    }
}

/// Applies the graph-level rules to exhaustion.
pub fn reduce_oct_rules(g: &Graph) -> ReductionPartition {
    let mut w = Work::new(g);
    w.oct_pass();
    w.finish(g.n(), Vec::new())
}

/// One pass of the cover-level rules. Isolated vertices go to `Vr`.
pub fn reduce_vc_rules(g: &Graph) -> ReductionPartition {
    reduce_vc_rules_with(g, ReduceOptions::default())
}

pub fn reduce_vc_rules_with(g: &Graph, opts: ReduceOptions) -> ReductionPartition {
    let mut w = Work::new(g);
    let (_, bip) = w.vc_pass(opts);
    w.finish(g.n(), bip)
}

/// Alternates both rule sets until neither changes the graph. `Vb` comes
/// from the last cover-level pass, which ran on the final graph.
pub fn reduce_fixpoint(g: &Graph) -> ReductionPartition {
    reduce_fixpoint_with(g, ReduceOptions::default())
}

pub fn reduce_fixpoint_with(g: &Graph, opts: ReduceOptions) -> ReductionPartition {
    let mut w = Work::new(g);
    loop {
        let a = w.oct_pass();
        let (b, bip) = w.vc_pass(opts);
        if !a && !b {
            return w.finish(g.n(), bip);
        }
    }
}

/// Maps a transversal of the reduced graph to one of the original graph:
/// forced vertices are added, and a kept twin that would close an odd cycle
/// with its removed partner is traded for one of their shared neighbors.
pub fn lift_solution(p: &ReductionPartition, s_reduced: &[usize]) -> Result<Vec<usize>> {
    let mut s = BTreeSet::new();
    for &v in s_reduced {
        let &orig = p
            .lift_map
            .get(v)
            .ok_or_else(|| OctError::Contract(format!("reduced vertex {v} out of range")))?;
        s.insert(orig);
    }
    for step in p.log.iter().rev() {
        match *step {
            Step::Force { vertex } => {
                s.insert(vertex);
            }
            Step::Twin { kept, u, w, .. } => {
                if s.contains(&kept) && !s.contains(&u) && !s.contains(&w) {
                    s.remove(&kept);
                    s.insert(u);
                }
            }
            Step::RemoveVertex { .. } | Step::RemoveEdge { .. } => {}
        }
    }
    Ok(s.into_iter().collect())
}

/// Runs `solve` on the reduced graph of `p` and restates its report for the
/// original graph `g`: the solution is lifted and both bounds shift by
/// `|Vo|`.
pub fn solve_lifted(
    g: &Graph,
    p: &ReductionPartition,
    solve: impl FnOnce(&Graph) -> Result<SolverReport>,
) -> Result<SolverReport> {
    let r = solve(&p.reduced)?;
    let lifted = lift_solution(p, &r.solution.vertices)?;
    let solution = OctSolution::certified(g, lifted, r.solution.source);
    if !solution.verified {
        return Err(OctError::Contract(
            "lifted solution is not a transversal".into(),
        ));
    }
    let forced = p.v_oct.len();
    Ok(SolverReport {
        lower: (r.lower + forced).min(solution.len()),
        upper: solution.len(),
        optimal: r.optimal && r.upper + forced == solution.len(),
        solution,
        ..r
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::verify_oct;

    fn is_partition(p: &ReductionPartition) -> bool {
        let mut all: Vec<usize> = [&p.v_removed, &p.v_oct, &p.v_bip, &p.v_rest]
            .into_iter()
            .flatten()
            .copied()
            .collect();
        all.sort_unstable();
        all == (0..p.n).collect::<Vec<_>>()
    }

    #[test]
    fn path_vanishes() {
        let p = reduce_oct_rules(&path(3));
        assert_eq!(p.v_removed, vec![0, 1, 2]);
        assert_eq!(p.reduced.n(), 0);
        assert!(is_partition(&p));
    }

    #[test]
    fn pendant_on_triangle() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let p = reduce_oct_rules(&g);
        assert_eq!(p.v_removed, vec![3]);
        assert_eq!(p.lift_map, vec![0, 1, 2]);
        assert_eq!(p.reduced.m(), 3);
    }

    #[test]
    fn bridge_between_triangles_is_dropped() {
        // triangles 0-1-2 and 3-4-5 joined by the bridge 2-3
        let g =
            Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        let p = reduce_oct_rules(&g);
        assert_eq!(p.e_removed, vec![(2, 3)]);
        assert_eq!(p.reduced.m(), 6);
        assert!(p.v_removed.is_empty());
    }

    #[test]
    fn even_cycle_hanging_off_a_triangle() {
        // triangle 0-1-2 sharing vertex 2 with the square 2-3-4-5
        let g =
            Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 2)]).unwrap();
        let p = reduce_oct_rules(&g);
        assert_eq!(p.reduced.n(), 3);
        assert_eq!(p.v_removed, vec![3, 4, 5]);
    }

    #[test]
    fn twins_keep_lowest_id() {
        // triangle 0-1-2, twins 3 and 4 on 0 and 5, and 5 adjacent to 1
        let g = Graph::from_edges(
            6,
            [
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 0),
                (3, 5),
                (4, 0),
                (4, 5),
                (5, 1),
            ],
        )
        .unwrap();
        let p = reduce_oct_rules(&g);
        assert!(p.log.contains(&Step::Twin {
            removed: 4,
            kept: 3,
            u: 0,
            w: 5
        }));
        assert!(!p.lift_map.contains(&4));
    }

    #[test]
    fn every_feasible_reduced_set_lifts() {
        let g = Graph::from_edges(
            6,
            [
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 0),
                (3, 5),
                (4, 0),
                (4, 5),
                (5, 1),
            ],
        )
        .unwrap();
        let p = reduce_oct_rules(&g);
        let r = &p.reduced;
        for mask in 0u32..1 << r.n() {
            let s: Vec<usize> = (0..r.n()).filter(|&i| mask >> i & 1 == 1).collect();
            if verify_oct(r, &s) {
                assert!(verify_oct(&g, &lift_solution(&p, &s).unwrap()), "{s:?}");
            }
        }
    }

    #[test]
    fn identity_on_irreducible() {
        let p = reduce_oct_rules(&complete(5));
        assert!(p.is_identity());
        assert_eq!(lift_solution(&p, &[0, 2]).unwrap(), vec![0, 2]);
    }

    #[test]
    fn triangle_vc_rules_do_nothing() {
        let p = reduce_vc_rules(&complete(3));
        assert!(p.v_oct.is_empty() && p.v_bip.is_empty());
        assert_eq!(p.v_rest, vec![0, 1, 2]);
    }

    #[test]
    fn unconfined_resolves_triangle() {
        let p = reduce_vc_rules_with(&complete(3), ReduceOptions { unconfined: true });
        assert_eq!(p.v_oct, vec![0]);
        assert_eq!(p.v_bip, vec![1, 2]);
        assert!(p.v_rest.is_empty());
        assert_eq!(p.reduced.m(), 1);
    }

    #[test]
    fn edgeless_vc_rules_remove_all() {
        let p = reduce_vc_rules(&Graph::empty(4));
        assert_eq!(p.v_removed, vec![0, 1, 2, 3]);
    }

    #[test]
    fn forced_vertices_lift() {
        let p = ReductionPartition {
            n: 4,
            v_removed: vec![0, 1, 2],
            v_oct: vec![3],
            v_bip: vec![],
            v_rest: vec![],
            e_removed: vec![],
            reduced: Graph::empty(0),
            lift_map: vec![],
            log: vec![Step::Force { vertex: 3 }],
        };
        assert_eq!(lift_solution(&p, &[]).unwrap(), vec![3]);
        assert!(lift_solution(&p, &[0]).is_err());
    }

    #[test]
    fn json_is_stable() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(reduce_fixpoint(&g).to_json(), reduce_fixpoint(&g).to_json());
        assert!(reduce_fixpoint(&g)
            .to_json()
            .contains("\"rule\": \"degree\""));
    }
}
