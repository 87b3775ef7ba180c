//! Iterative compression with bipartite jump-start and degeneracy-ordered
//! suffixes, usable as an anytime solver.
//!
//! Vertices are added along an ordering. The working transversal is always
//! optimal for the prefix processed so far, so its size is a lower bound on
//! the optimum; adding every unprocessed vertex gives the upper bound.

mod compress;
mod cut;

use std::time::Instant;

use serde::Serialize;

pub use compress::compress;
pub(crate) use compress::{compress_with_deadline, CompressOutcome};
pub use cut::{min_vertex_cut, CutError};

use crate::error::{OctError, Result};
use crate::graph::{degeneracy_ordering, verify_oct, Graph};
use crate::heuristics::{ensemble, EnsembleConfig};
use crate::solution::{Deadline, OctSolution, SolverReport, Source, Termination};

/// Heuristic invocations spent on a jump-start when none is supplied.
pub const JUMPSTART_ITERATIONS: u64 = 16;

#[derive(Debug, Clone, Serialize)]
pub struct IcConfig {
    /// 0: plain ordering; 1: bipartite jump-start; 2: jump-start with the
    /// transversal suffix in reverse degeneracy order.
    pub level: u8,
    pub timeout: Option<f64>,
    pub seed: u64,
    /// Heuristic transversal seeding levels 1 and 2.
    pub jumpstart: Option<Vec<usize>>,
    /// Cap on compression attempts, for time-free replay.
    pub iteration_limit: Option<u64>,
}

impl IcConfig {
    pub fn new(level: u8, timeout: Option<f64>, seed: u64) -> Self {
        IcConfig {
            level,
            timeout,
            seed,
            jumpstart: None,
            iteration_limit: None,
        }
    }

    /// Level 1 below one second, level 2 otherwise.
    pub fn level_for_timeout(timeout: Option<f64>) -> u8 {
        match timeout {
            Some(t) if t < 1.0 => 1,
            _ => 2,
        }
    }
}

/// Ordering used by the given level. Level 0 ignores `jumpstart`; levels 1
/// and 2 put `V \ S` first (ascending), then `S` ascending or in reverse
/// degeneracy order of `G[S]`.
pub fn build_ordering(g: &Graph, level: u8, jumpstart: Option<&[usize]>) -> Result<Vec<usize>> {
    if level == 0 {
        return Ok(g.vertices().collect());
    }
    if level > 2 {
        return Err(OctError::InvalidArgument(format!(
            "level {level} not in 0..=2"
        )));
    }
    let s =
        jumpstart.ok_or_else(|| OctError::Contract("levels 1 and 2 need a jump-start".into()))?;
    if s.iter().any(|&v| v >= g.n()) || !verify_oct(g, s) {
        return Err(OctError::Contract(
            "jump-start is not a feasible transversal".into(),
        ));
    }
    let mut in_s = vec![false; g.n()];
    for &v in s {
        in_s[v] = true;
    }
    let mut suffix: Vec<usize> = g.vertices().filter(|&v| in_s[v]).collect();
    let mut order: Vec<usize> = g.vertices().filter(|&v| !in_s[v]).collect();
    if level == 2 {
        let (sub, map) = g.induced(&suffix);
        let (deg_order, _) = degeneracy_ordering(&sub);
        suffix = deg_order.into_iter().rev().map(|i| map[i]).collect();
    }
    order.extend(suffix);
    Ok(order)
}

/// Observable solver state between compression attempts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IcState {
    pub ordering: Vec<usize>,
    /// Index of the next vertex to add.
    pub frontier: usize,
    /// Optimal transversal of the processed prefix, in original ids.
    pub current: Vec<usize>,
    pub lower: usize,
    pub upper: usize,
}

/// Step-wise iterative compression.
pub struct IcSolver<'a> {
    g: &'a Graph,
    state: IcState,
    position: Vec<usize>,
    iterations: u64,
}

/// Result of a single [`IcSolver::step`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepResult {
    /// Added a vertex without needing a compression.
    Extended,
    Compressed,
    /// Compression proved the prefix needs one more vertex.
    Grew,
    Interrupted,
    Done,
}

impl<'a> IcSolver<'a> {
    /// Prepares the ordering; the jump-start, if needed and absent, comes
    /// from a short seeded heuristic ensemble.
    pub fn new(g: &'a Graph, cfg: &IcConfig) -> Result<Self> {
        let jumpstart = match (cfg.level, &cfg.jumpstart) {
            (0, _) => None,
            (_, Some(s)) => Some(s.clone()),
            (_, None) => {
                let cfg = EnsembleConfig::with_iterations(cfg.seed, JUMPSTART_ITERATIONS);
                Some(ensemble(g, &cfg).solution.vertices)
            }
        };
        let ordering = build_ordering(g, cfg.level, jumpstart.as_deref())?;
        // V \ S is bipartite, so the empty set is optimal on that prefix
        let frontier = jumpstart.as_ref().map_or(0, |s| {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            g.n() - s.len()
        });
        let mut position = vec![0; g.n()];
        for (i, &v) in ordering.iter().enumerate() {
            position[v] = i;
        }
        let n = g.n();
        Ok(IcSolver {
            g,
            state: IcState {
                ordering,
                frontier,
                current: Vec::new(),
                lower: 0,
                upper: n - frontier,
            },
            position,
            iterations: 0,
        })
    }

    pub fn state(&self) -> &IcState {
        &self.state
    }

    /// Compression attempts so far.
    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    pub fn is_done(&self) -> bool {
        self.state.frontier == self.g.n()
    }

    /// Feasible transversal of the whole graph: the current prefix solution
    /// plus every unprocessed vertex.
    pub fn incumbent(&self) -> Vec<usize> {
        let mut out = self.state.current.clone();
        out.extend_from_slice(&self.state.ordering[self.state.frontier..]);
        out.sort_unstable();
        out
    }

    /// Adds the next vertex, compressing if the prefix stops being bipartite
    /// after removing the current transversal.
    pub fn step(&mut self, deadline: &Deadline) -> Result<StepResult> {
        let st = &mut self.state;
        if st.frontier == self.g.n() {
            return Ok(StepResult::Done);
        }
        let prefix = &st.ordering[..=st.frontier];
        let (h, map) = self.g.induced(prefix);
        // prefix positions double as subgraph ids
        let mut s: Vec<usize> = st.current.iter().map(|&v| self.position[v]).collect();
        let result = if verify_oct(&h, &s) {
            StepResult::Extended
        } else {
            s.push(st.frontier);
            self.iterations += 1;
            match compress_with_deadline(&h, &s, deadline)? {
                CompressOutcome::Compressed(x) => {
                    s = x;
                    StepResult::Compressed
                }
                CompressOutcome::Impossible => StepResult::Grew,
                CompressOutcome::Interrupted => return Ok(StepResult::Interrupted),
            }
        };
        let mut current: Vec<usize> = s.into_iter().map(|i| map[i]).collect();
        current.sort_unstable();
        st.current = current;
        st.frontier += 1;
        st.lower = st.current.len();
        st.upper = st.current.len() + (self.g.n() - st.frontier);
        Ok(result)
    }
}

/// Runs iterative compression to completion or until the deadline or
/// iteration limit; the report carries the anytime bounds.
pub fn solve_ic(g: &Graph, cfg: &IcConfig) -> Result<SolverReport> {
    solve_ic_until(g, cfg, &Deadline::from_secs(cfg.timeout))
}

pub fn solve_ic_until(g: &Graph, cfg: &IcConfig, deadline: &Deadline) -> Result<SolverReport> {
    let start = Instant::now();
    let mut solver = IcSolver::new(g, cfg)?;
    let mut termination = Termination::Completed;
    while !solver.is_done() {
        if deadline.expired()
            || cfg
                .iteration_limit
                .is_some_and(|l| solver.iterations() >= l)
        {
            termination = Termination::Deadline;
            break;
        }
        if solver.step(deadline)? == StepResult::Interrupted {
            termination = Termination::Deadline;
            break;
        }
    }
    let st = solver.state();
    let solution = OctSolution::certified(g, solver.incumbent(), Source::Ic);
    Ok(SolverReport {
        optimal: solver.is_done(),
        lower: st.lower,
        upper: st.upper,
        solution,
        elapsed: start.elapsed().as_secs_f64(),
        seed: cfg.seed,
        termination,
        iterations: solver.iterations(),
    })
}
