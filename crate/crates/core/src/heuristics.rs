//! Linear-time randomized bipartization heuristics and the round-robin
//! ensemble built on them.
//!
//! Every heuristic grows a bipartite induced subgraph and returns the
//! remaining vertices as the transversal, so outputs are always feasible.

use std::collections::VecDeque;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::OctError;
use crate::graph::{Graph, Side};
use crate::solution::{mix_seed, Deadline, OctSolution, SolverReport, Source, Termination};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Heuristic {
    Dfs,
    Bfs,
    Luby,
    MinDeg,
}

impl Heuristic {
    /// Round-robin order of the ensemble.
    pub const ALL: [Heuristic; 4] = [
        Heuristic::Dfs,
        Heuristic::Bfs,
        Heuristic::Luby,
        Heuristic::MinDeg,
    ];

    pub fn run(self, g: &Graph, seed: u64) -> OctSolution {
        match self {
            Heuristic::Dfs => dfs_two_coloring(g, seed),
            Heuristic::Bfs => bfs_two_coloring(g, seed),
            Heuristic::Luby => luby(g, seed),
            Heuristic::MinDeg => mindeg_independent(g, seed),
        }
    }

    fn index(self) -> u64 {
        self as u64
    }
}

impl FromStr for Heuristic {
    type Err = OctError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dfs" => Ok(Heuristic::Dfs),
            "bfs" => Ok(Heuristic::Bfs),
            "luby" => Ok(Heuristic::Luby),
            "mindeg" => Ok(Heuristic::MinDeg),
            other => Err(OctError::InvalidArgument(format!(
                "unknown heuristic {other:?}"
            ))),
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Frontier {
    Stack,
    Queue,
}

/// Greedy 2-coloring by graph search. Each vertex is colored when it is
/// popped: opposite to its colored neighbors, or deleted if those neighbors
/// already use both colors. `roots` is the order in which components are
/// entered; `order` permutes the neighbors before they are pushed.
pub(crate) fn greedy_two_coloring(
    g: &Graph,
    frontier: Frontier,
    roots: &[usize],
    mut order: impl FnMut(usize, &mut Vec<usize>),
) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<Option<Side>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut pending = VecDeque::new();
    let mut scratch = Vec::new();
    let mut deleted = Vec::new();
    for &root in roots {
        if visited[root] {
            continue;
        }
        pending.push_back(root);
        while let Some(v) = match frontier {
            Frontier::Stack => pending.pop_back(),
            Frontier::Queue => pending.pop_front(),
        } {
            if visited[v] {
                continue;
            }
            visited[v] = true;
            let (mut left, mut right) = (false, false);
            for &u in g.neighbors(v) {
                match color[u] {
                    Some(Side::Left) => left = true,
                    Some(Side::Right) => right = true,
                    _ => {}
                }
            }
            color[v] = Some(match (left, right) {
                (true, true) => {
                    deleted.push(v);
                    Side::Deleted
                }
                (true, false) => Side::Right,
                _ => Side::Left,
            });
            scratch.clear();
            scratch.extend(g.neighbors(v).iter().copied().filter(|&u| !visited[u]));
            order(v, &mut scratch);
            pending.extend(scratch.iter().copied());
        }
    }
    deleted
}

fn seeded_two_coloring(g: &Graph, seed: u64, frontier: Frontier) -> Vec<usize> {
    let mut rng = rng(seed);
    let mut roots: Vec<usize> = g.vertices().collect();
    roots.shuffle(&mut rng);
    greedy_two_coloring(g, frontier, &roots, |_, nbrs| nbrs.shuffle(&mut rng))
}

/// Depth-first greedy 2-coloring from a random start with random neighbor order.
pub fn dfs_two_coloring(g: &Graph, seed: u64) -> OctSolution {
    let s = seeded_two_coloring(g, seed, Frontier::Stack);
    OctSolution::certified(g, s, Source::HeuristicDfs)
}

/// Breadth-first variant of [`dfs_two_coloring`].
pub fn bfs_two_coloring(g: &Graph, seed: u64) -> OctSolution {
    let s = seeded_two_coloring(g, seed, Frontier::Queue);
    OctSolution::certified(g, s, Source::HeuristicBfs)
}

/// Vertices bucketed by current degree, with O(1) removal and uniform
/// sampling from the lowest nonempty bucket.
struct DegreeBuckets {
    buckets: Vec<Vec<usize>>,
    slot: Vec<usize>,
    degree: Vec<usize>,
    present: Vec<bool>,
    min: usize,
    len: usize,
}

impl DegreeBuckets {
    fn new(g: &Graph, alive: &[bool]) -> Self {
        let n = g.n();
        let mut degree = vec![0; n];
        let mut buckets = vec![Vec::new(); g.max_degree() + 1];
        let mut slot = vec![0; n];
        let mut len = 0;
        for v in g.vertices().filter(|&v| alive[v]) {
            degree[v] = g.neighbors(v).iter().filter(|&&u| alive[u]).count();
            slot[v] = buckets[degree[v]].len();
            buckets[degree[v]].push(v);
            len += 1;
        }
        DegreeBuckets {
            buckets,
            slot,
            degree,
            present: alive.to_vec(),
            min: 0,
            len,
        }
    }

    fn detach(&mut self, v: usize) {
        let b = &mut self.buckets[self.degree[v]];
        let i = self.slot[v];
        b.swap_remove(i);
        if i < b.len() {
            self.slot[b[i]] = i;
        }
    }

    fn remove(&mut self, v: usize) {
        self.detach(v);
        self.present[v] = false;
        self.len -= 1;
    }

    fn decrement(&mut self, v: usize) {
        self.detach(v);
        self.degree[v] -= 1;
        let d = self.degree[v];
        self.slot[v] = self.buckets[d].len();
        self.buckets[d].push(v);
        self.min = self.min.min(d);
    }

    fn pick_min(&mut self, rng: &mut impl Rng) -> Option<usize> {
        if self.len == 0 {
            return None;
        }
        while self.buckets[self.min].is_empty() {
            self.min += 1;
        }
        let b = &self.buckets[self.min];
        Some(b[rng.gen_range(0..b.len())])
    }
}

/// Independent set by repeatedly taking a minimum-degree vertex of the live
/// subgraph and discarding its neighbors. Marks chosen vertices dead.
fn mindeg_round(g: &Graph, alive: &mut [bool], rng: &mut impl Rng) -> Vec<usize> {
    let mut q = DegreeBuckets::new(g, alive);
    let mut chosen = Vec::new();
    while let Some(v) = q.pick_min(rng) {
        chosen.push(v);
        q.remove(v);
        for &u in g.neighbors(v) {
            if q.present[u] {
                q.remove(u);
                for &w in g.neighbors(u) {
                    if q.present[w] {
                        q.decrement(w);
                    }
                }
            }
        }
    }
    for &v in &chosen {
        alive[v] = false;
    }
    chosen
}

/// Two rounds of minimum-degree greedy independent set; the leftovers form
/// the transversal.
pub fn mindeg_independent(g: &Graph, seed: u64) -> OctSolution {
    let mut rng = rng(seed);
    let mut alive = vec![true; g.n()];
    mindeg_round(g, &mut alive, &mut rng);
    mindeg_round(g, &mut alive, &mut rng);
    let rest = g.vertices().filter(|&v| alive[v]).collect();
    OctSolution::certified(g, rest, Source::HeuristicMindeg)
}

/// Luby-style maximal independent set: live vertices draw fresh priorities
/// each pass and local maxima join. Marks chosen vertices dead.
fn luby_round(g: &Graph, alive: &mut [bool], rng: &mut impl Rng) -> Vec<usize> {
    let mut live = alive.to_vec();
    let mut priority = vec![0u64; g.n()];
    let mut chosen = Vec::new();
    loop {
        let candidates: Vec<usize> = g.vertices().filter(|&v| live[v]).collect();
        if candidates.is_empty() {
            break;
        }
        for &v in &candidates {
            priority[v] = rng.gen();
        }
        let winners: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&v| {
                g.neighbors(v)
                    .iter()
                    .all(|&u| !live[u] || (priority[u], u) < (priority[v], v))
            })
            .collect();
        for &v in &winners {
            live[v] = false;
            for &u in g.neighbors(v) {
                live[u] = false;
            }
        }
        chosen.extend(winners);
    }
    for &v in &chosen {
        alive[v] = false;
    }
    chosen
}

/// Two rounds of randomized maximal independent set, priorities redrawn per
/// pass and per round.
pub fn luby(g: &Graph, seed: u64) -> OctSolution {
    let mut rng = rng(seed);
    let mut alive = vec![true; g.n()];
    luby_round(g, &mut alive, &mut rng);
    luby_round(g, &mut alive, &mut rng);
    let rest = g.vertices().filter(|&v| alive[v]).collect();
    OctSolution::certified(g, rest, Source::HeuristicLuby)
}

#[derive(Debug, Clone, Serialize)]
pub struct EnsembleConfig {
    /// Wall-clock budget in seconds.
    pub timeout: Option<f64>,
    pub seed: u64,
    pub enabled: Vec<Heuristic>,
    /// Cap on heuristic invocations, for time-free replay.
    pub iteration_limit: Option<u64>,
}

impl EnsembleConfig {
    pub fn new(timeout: Option<f64>, seed: u64) -> Self {
        EnsembleConfig {
            timeout,
            seed,
            enabled: Heuristic::ALL.to_vec(),
            iteration_limit: None,
        }
    }

    pub fn with_iterations(seed: u64, iterations: u64) -> Self {
        EnsembleConfig {
            timeout: None,
            seed,
            enabled: Heuristic::ALL.to_vec(),
            iteration_limit: Some(iterations),
        }
    }
}

/// Runs the enabled heuristics round-robin, reseeding each invocation from
/// `(seed, heuristic, round)`, and keeps the first smallest solution. The
/// first full cycle always completes; afterwards the run stops at the
/// deadline or iteration limit. Without either it runs exactly one cycle.
pub fn ensemble(g: &Graph, cfg: &EnsembleConfig) -> SolverReport {
    ensemble_until(g, cfg, &Deadline::from_secs(cfg.timeout))
}

pub fn ensemble_until(g: &Graph, cfg: &EnsembleConfig, deadline: &Deadline) -> SolverReport {
    let start = Instant::now();
    let mut enabled: Vec<Heuristic> = cfg.enabled.clone();
    enabled.sort();
    enabled.dedup();
    if enabled.is_empty() {
        enabled = Heuristic::ALL.to_vec();
    }
    let bounded = cfg.timeout.is_some() || cfg.iteration_limit.is_some();

    let mut best: Option<OctSolution> = None;
    let mut iterations = 0u64;
    let mut termination = Termination::Completed;
    'rounds: for round in 0u64.. {
        for &h in &enabled {
            if iterations >= enabled.len() as u64 {
                if !bounded {
                    break 'rounds;
                }
                if deadline.expired() || cfg.iteration_limit.is_some_and(|l| iterations >= l) {
                    termination = Termination::Deadline;
                    break 'rounds;
                }
            }
            let sol = h.run(g, mix_seed(&[cfg.seed, h.index(), round]));
            iterations += 1;
            if best.as_ref().is_none_or(|b| sol.len() < b.len()) {
                best = Some(sol);
            }
            if best.as_ref().is_some_and(|b| b.is_empty()) {
                break 'rounds;
            }
        }
    }
    let mut solution = best.expect("at least one heuristic ran");
    solution.source = Source::Ensemble;
    let upper = solution.len();
    SolverReport {
        optimal: upper == 0,
        lower: 0,
        upper,
        solution,
        elapsed: start.elapsed().as_secs_f64(),
        seed: cfg.seed,
        termination: if upper == 0 {
            Termination::Completed
        } else {
            termination
        },
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::verify_oct;

    fn all_heuristics(g: &Graph, seed: u64) -> Vec<OctSolution> {
        Heuristic::ALL.iter().map(|h| h.run(g, seed)).collect()
    }

    #[test]
    fn bipartite_inputs_give_empty_transversals() {
        let g =
            Graph::from_edges(8, (0..8).map(|i| (i, (i + 1) % 8)).chain([(0, 3), (2, 7)])).unwrap();
        for seed in 0..20 {
            assert!(dfs_two_coloring(&g, seed).is_empty());
            assert!(bfs_two_coloring(&g, seed).is_empty());
            assert!(dfs_two_coloring(&path(9), seed).is_empty());
            assert!(bfs_two_coloring(&star(5), seed).is_empty());
            assert!(mindeg_independent(&star(5), seed).is_empty());
            assert!(luby(&Graph::empty(6), seed).is_empty());
            assert!(luby(&path(2), seed).is_empty());
        }
    }

    /// Every root order and every per-vertex neighbor orientation on C5.
    fn exhaustive_c5(frontier: Frontier) -> Vec<usize> {
        let g = cycle(5);
        let mut sizes = Vec::new();
        for start in 0..5 {
            let roots: Vec<usize> = (0..5).map(|i| (start + i) % 5).collect();
            for flips in 0..32u32 {
                let s = greedy_two_coloring(&g, frontier, &roots, |v, nbrs| {
                    if flips & (1 << v) != 0 {
                        nbrs.reverse();
                    }
                });
                assert!(verify_oct(&g, &s));
                sizes.push(s.len());
            }
        }
        sizes
    }

    #[test]
    fn c5_search_colorings_delete_exactly_one() {
        assert!(exhaustive_c5(Frontier::Stack).iter().all(|&k| k == 1));
        assert!(exhaustive_c5(Frontier::Queue).iter().all(|&k| k == 1));
    }

    #[test]
    fn clique_and_triangle() {
        for seed in 0..10 {
            assert_eq!(dfs_two_coloring(&complete(4), seed).len(), 2);
            assert_eq!(bfs_two_coloring(&complete(3), seed).len(), 1);
        }
    }

    #[test]
    fn c5_independent_set_heuristics() {
        let sizes: Vec<usize> = (0..200)
            .map(|s| mindeg_independent(&cycle(5), s).len())
            .collect();
        assert!(sizes.iter().all(|&k| k == 1));
        let sizes: Vec<usize> = (0..200).map(|s| luby(&cycle(5), s).len()).collect();
        assert!(sizes.iter().all(|&k| k == 1 || k == 2));
        assert_eq!(sizes.iter().min(), Some(&1));
    }

    #[test]
    fn outputs_are_feasible_and_deterministic() {
        let g = complete(7);
        for seed in 0..10 {
            for (a, b) in all_heuristics(&g, seed)
                .iter()
                .zip(all_heuristics(&g, seed))
            {
                assert!(a.verified);
                assert_eq!(a, &b);
            }
        }
    }

    #[test]
    fn ensemble_bipartite_short_timeout() {
        let r = ensemble(&cycle(6), &EnsembleConfig::new(Some(0.01), 3));
        assert!(r.solution.is_empty() && r.optimal);
        assert!(r.is_consistent());
    }

    #[test]
    fn ensemble_iteration_replay() {
        let g = complete(6);
        let cfg = EnsembleConfig::with_iterations(9, 12);
        let a = ensemble(&g, &cfg);
        let b = ensemble(&g, &cfg);
        assert_eq!(a.iterations, 12);
        assert_eq!(a.solution.vertices, b.solution.vertices);
        assert_eq!(a.solution.source, Source::Ensemble);
        assert_eq!(a.upper, 4);
        assert!(a.is_consistent());
    }

    #[test]
    fn ensemble_single_cycle_without_budget() {
        let r = ensemble(&cycle(7), &EnsembleConfig::new(None, 1));
        assert_eq!(r.iterations, 4);
        assert_eq!(r.upper, 1);
    }

    #[test]
    fn ensemble_respects_enabled_subset() {
        let mut cfg = EnsembleConfig::with_iterations(1, 3);
        cfg.enabled = vec![Heuristic::Luby];
        assert_eq!(ensemble(&cycle(5), &cfg).iterations, 3);
    }

    #[test]
    fn parse_names() {
        assert_eq!("MinDeg".parse::<Heuristic>().unwrap(), Heuristic::MinDeg);
        assert!("greedy".parse::<Heuristic>().is_err());
    }
}
