//! Branch-and-reduce minimum vertex cover.

use std::time::Instant;

use serde::Serialize;

use crate::error::{OctError, Result};
use crate::graph::Graph;
use crate::solution::{Deadline, Termination};
use crate::vc::lp::doubled_lp;

/// One irreversible decision on a kernel, replayed backwards to rebuild a
/// cover of the input graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Op {
    Include(usize),
    /// Removed while isolated.
    Exclude(usize),
    /// Degree-2 vertex `v` with non-adjacent neighbors `a`, `b` merged into
    /// the new vertex `w`.
    Fold {
        v: usize,
        a: usize,
        b: usize,
        w: usize,
    },
}

/// Which reduction rules a kernel may apply.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Rules {
    pub fold: bool,
    pub unconfined: bool,
    pub lp: bool,
}

pub(crate) enum Reduced {
    /// The lower bound reached `best`.
    Pruned,
    Bound(usize),
}

/// A shrinking vertex-cover instance. `adj` may hold dead ids; `deg` counts
/// live neighbors only. `fixed` is the cover size already committed, so
/// `fixed + vc(live part)` is the optimum of the original instance given the
/// decisions on the trail.
#[derive(Debug, Clone)]
pub(crate) struct Kernel {
    adj: Vec<Vec<usize>>,
    alive: Vec<bool>,
    deg: Vec<usize>,
    edges: usize,
    fixed: usize,
    trail: Vec<Op>,
    n_input: usize,
}

impl Kernel {
    pub(crate) fn new(g: &Graph) -> Self {
        Kernel {
            adj: g.vertices().map(|v| g.neighbors(v).to_vec()).collect(),
            alive: vec![true; g.n()],
            deg: g.vertices().map(|v| g.degree(v)).collect(),
            edges: g.m(),
            fixed: 0,
            trail: Vec::new(),
            n_input: g.n(),
        }
    }

    pub(crate) fn trail(&self) -> &[Op] {
        &self.trail
    }

    fn live_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied().filter(|&u| self.alive[u])
    }

    fn remove(&mut self, v: usize) {
        debug_assert!(self.alive[v]);
        self.alive[v] = false;
        for i in 0..self.adj[v].len() {
            let u = self.adj[v][i];
            if self.alive[u] {
                self.deg[u] -= 1;
                self.edges -= 1;
            }
        }
    }

    pub(crate) fn include(&mut self, v: usize) {
        self.remove(v);
        self.fixed += 1;
        self.trail.push(Op::Include(v));
    }

    fn exclude_isolated(&mut self, v: usize) {
        debug_assert_eq!(self.deg[v], 0);
        self.remove(v);
        self.trail.push(Op::Exclude(v));
    }

    fn fold(&mut self, v: usize) {
        let pair: Vec<usize> = self.live_neighbors(v).collect();
        let (a, b) = (pair[0], pair[1]);
        if self.live_neighbors(a).any(|x| x == b) {
            // triangle: some minimum cover holds both neighbors
            self.include(a);
            self.include(b);
            return;
        }
        let mut merged: Vec<usize> = self
            .live_neighbors(a)
            .chain(self.live_neighbors(b))
            .filter(|&x| x != v)
            .collect();
        merged.sort_unstable();
        merged.dedup();
        self.remove(v);
        self.remove(a);
        self.remove(b);
        let w = self.adj.len();
        for &x in &merged {
            self.adj[x].push(w);
            self.deg[x] += 1;
        }
        self.edges += merged.len();
        self.deg.push(merged.len());
        self.adj.push(merged);
        self.alive.push(true);
        self.fixed += 1;
        self.trail.push(Op::Fold { v, a, b, w });
    }

    /// One ascending sweep of the degree rules.
    fn degree_sweep(&mut self, fold: bool) -> bool {
        let mut changed = false;
        for v in 0..self.adj.len() {
            if !self.alive[v] {
                continue;
            }
            match self.deg[v] {
                0 => self.exclude_isolated(v),
                1 => {
                    let u = self.live_neighbors(v).next().unwrap();
                    self.include(u);
                }
                2 if fold => self.fold(v),
                _ => continue,
            }
            changed = true;
        }
        changed
    }

    /// Includes `u` whenever some neighbor `v` has `N[v] ⊆ N[u]`.
    fn dominance_sweep(&mut self) -> bool {
        let mut stamp = vec![usize::MAX; self.adj.len()];
        let mut changed = false;
        for u in 0..self.adj.len() {
            if !self.alive[u] || self.deg[u] == 0 {
                continue;
            }
            stamp[u] = u;
            for &x in &self.adj[u] {
                if self.alive[x] {
                    stamp[x] = u;
                }
            }
            let dominates = self.live_neighbors(u).any(|v| {
                self.deg[v] <= self.deg[u] && self.live_neighbors(v).all(|x| stamp[x] == u)
            });
            if dominates {
                self.include(u);
                changed = true;
            }
        }
        changed
    }

    /// True when `v` is unconfined, in which case some minimum cover holds
    /// it. Grows an independent set `S` from `{v}`: a neighbor `u` of `S`
    /// with a single neighbor in `S` and nothing outside `N[S]` proves it;
    /// exactly one such outside vertex `w` extends `S` by `w`.
    fn unconfined(&self, v: usize, sc: &mut Scratch) -> bool {
        sc.generation += 1;
        let g = sc.generation;
        sc.boundary.clear();
        sc.closed[v] = g;
        self.extend_confining(v, sc);
        loop {
            let mut grow = None;
            for i in 0..sc.boundary.len() {
                let u = sc.boundary[i];
                if sc.count[u] != 1 {
                    continue;
                }
                let mut outside = self.live_neighbors(u).filter(|&x| sc.closed[x] != g);
                match (outside.next(), outside.next()) {
                    (None, _) => return true,
                    (Some(w), None) if grow.is_none() => grow = Some(w),
                    _ => {}
                }
            }
            match grow {
                Some(w) => {
                    sc.closed[w] = g;
                    self.extend_confining(w, sc);
                }
                None => return false,
            }
        }
    }

    fn extend_confining(&self, w: usize, sc: &mut Scratch) {
        let g = sc.generation;
        for x in self.live_neighbors(w) {
            if sc.closed[x] != g {
                sc.closed[x] = g;
                sc.count[x] = 0;
                sc.boundary.push(x);
            }
            sc.count[x] += 1;
        }
    }

    fn unconfined_sweep(&mut self) -> bool {
        let mut sc = Scratch {
            generation: 0,
            closed: vec![0; self.adj.len()],
            count: vec![0; self.adj.len()],
            boundary: Vec::new(),
        };
        let mut changed = false;
        for v in 0..self.adj.len() {
            if self.alive[v] && self.deg[v] > 0 && self.unconfined(v, &mut sc) {
                self.include(v);
                changed = true;
            }
        }
        changed
    }

    /// Applies the enabled rules to exhaustion. Returns the LP lower bound
    /// of the final kernel (or `fixed` when LP is off), or `Pruned` as soon
    /// as the bound reaches `best`.
    pub(crate) fn reduce(&mut self, rules: Rules, best: usize) -> Reduced {
        loop {
            if self.degree_sweep(rules.fold)
                || self.dominance_sweep()
                || (rules.unconfined && self.unconfined_sweep())
            {
                if self.fixed >= best {
                    return Reduced::Pruned;
                }
                continue;
            }
            if !rules.lp {
                return if self.fixed >= best {
                    Reduced::Pruned
                } else {
                    Reduced::Bound(self.fixed)
                };
            }
            let x = doubled_lp(&self.adj, &self.alive);
            let bound = self.fixed + x.iter().sum::<usize>().div_ceil(2);
            if bound >= best {
                return Reduced::Pruned;
            }
            let forced: Vec<usize> = (0..x.len()).filter(|&v| x[v] == 2).collect();
            if forced.is_empty() {
                return Reduced::Bound(bound);
            }
            // persistency: some minimum cover holds every vertex valued 1
            for v in forced {
                self.include(v);
            }
        }
    }

    fn branch_vertex(&self) -> usize {
        let mut best = None;
        for v in 0..self.adj.len() {
            if self.alive[v] && best.is_none_or(|b: usize| self.deg[v] > self.deg[b]) {
                best = Some(v);
            }
        }
        best.expect("branching on an edgeless kernel")
    }

    /// Rebuilds the cover of the input graph implied by the trail, assuming
    /// the live part needs nothing more.
    pub(crate) fn expand(&self) -> Vec<usize> {
        expand_trail(&self.trail, self.adj.len(), self.n_input)
    }
}

struct Scratch {
    generation: usize,
    closed: Vec<usize>,
    count: Vec<usize>,
    boundary: Vec<usize>,
}

fn expand_trail(trail: &[Op], ids: usize, n_input: usize) -> Vec<usize> {
    let mut cover = vec![false; ids];
    for op in trail.iter().rev() {
        match *op {
            Op::Include(v) => cover[v] = true,
            Op::Exclude(_) => {}
            Op::Fold { v, a, b, w } => {
                if cover[w] {
                    cover[w] = false;
                    cover[a] = true;
                    cover[b] = true;
                } else {
                    cover[v] = true;
                }
            }
        }
    }
    (0..n_input).filter(|&v| cover[v]).collect()
}

/// Limits and warm start for [`solve_vc_exact`].
#[derive(Debug, Clone, Default)]
pub struct VcConfig {
    pub timeout: Option<f64>,
    /// Search-node budget, for time-free replay.
    pub node_limit: Option<u64>,
    /// Known cover used as the initial incumbent.
    pub initial: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VcReport {
    /// Sorted vertex cover.
    pub cover: Vec<usize>,
    pub lower: usize,
    pub upper: usize,
    pub optimal: bool,
    pub nodes: u64,
    pub elapsed: f64,
    pub termination: Termination,
}

struct Search<'a> {
    deadline: &'a Deadline,
    node_limit: Option<u64>,
    nodes: u64,
    stopped: bool,
    best: usize,
    best_cover: Vec<usize>,
}

const SEARCH_RULES: Rules = Rules {
    fold: true,
    unconfined: true,
    lp: true,
};

impl Search<'_> {
    fn run(&mut self, mut k: Kernel) {
        if self.stopped {
            return;
        }
        if self.deadline.expired() || self.node_limit.is_some_and(|l| self.nodes >= l) {
            self.stopped = true;
            return;
        }
        self.nodes += 1;
        if let Reduced::Pruned = k.reduce(SEARCH_RULES, self.best) {
            return;
        }
        if k.edges == 0 {
            self.best = k.fixed;
            self.best_cover = k.expand();
            return;
        }
        let v = k.branch_vertex();
        let mut with_v = k.clone();
        with_v.include(v);
        self.run(with_v);
        let hood: Vec<usize> = k.live_neighbors(v).collect();
        if k.fixed + hood.len() < self.best {
            for u in hood {
                k.include(u);
            }
            self.run(k);
        }
    }
}

fn is_cover(g: &Graph, cover: &[usize]) -> bool {
    let mut inside = vec![false; g.n()];
    for &v in cover {
        if v >= g.n() {
            return false;
        }
        inside[v] = true;
    }
    g.edges().all(|(u, v)| inside[u] || inside[v])
}

/// Greedy max-degree cover after the cheap rules, used as the first incumbent.
fn greedy_cover(root: &Kernel) -> Vec<usize> {
    let mut k = root.clone();
    let cheap = Rules {
        fold: true,
        unconfined: false,
        lp: false,
    };
    loop {
        k.reduce(cheap, usize::MAX);
        if k.edges == 0 {
            return k.expand();
        }
        let v = k.branch_vertex();
        k.include(v);
    }
}

/// Minimum vertex cover by branch and reduce. With a deadline or node limit
/// the best cover so far is returned with the root lower bound.
pub fn solve_vc_exact(g: &Graph, cfg: &VcConfig) -> Result<VcReport> {
    solve_vc_until(g, cfg, &Deadline::from_secs(cfg.timeout))
}

pub fn solve_vc_until(g: &Graph, cfg: &VcConfig, deadline: &Deadline) -> Result<VcReport> {
    let start = Instant::now();
    let mut root = Kernel::new(g);
    let lower = match root.reduce(SEARCH_RULES, usize::MAX) {
        Reduced::Bound(b) => b,
        Reduced::Pruned => unreachable!("nothing prunes against usize::MAX"),
    };
    let mut incumbent = greedy_cover(&root);
    if let Some(init) = &cfg.initial {
        let mut init = init.clone();
        init.sort_unstable();
        init.dedup();
        if !is_cover(g, &init) {
            return Err(OctError::Contract(
                "initial vertex set is not a cover".into(),
            ));
        }
        if init.len() < incumbent.len() {
            incumbent = init;
        }
    }
    let mut search = Search {
        deadline,
        node_limit: cfg.node_limit,
        nodes: 0,
        stopped: false,
        best: incumbent.len(),
        best_cover: incumbent,
    };
    if lower < search.best {
        search.run(root);
    }
    debug_assert!(is_cover(g, &search.best_cover));
    let optimal = !search.stopped;
    let upper = search.best_cover.len();
    Ok(VcReport {
        lower: if optimal { upper } else { lower.min(upper) },
        upper,
        optimal,
        cover: search.best_cover,
        nodes: search.nodes,
        elapsed: start.elapsed().as_secs_f64(),
        termination: if optimal {
            Termination::Completed
        } else {
            Termination::Deadline
        },
    })
}
