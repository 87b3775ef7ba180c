//! Solution records shared by every solver, plus the cooperative deadline
//! used for anytime behavior.

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::graph::{verify_oct, Graph};

/// Which solver produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    HeuristicDfs,
    HeuristicBfs,
    HeuristicLuby,
    HeuristicMindeg,
    Ensemble,
    Ic,
    Vc,
    Ilp,
    Oracle,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Source::HeuristicDfs => "heuristic-dfs",
            Source::HeuristicBfs => "heuristic-bfs",
            Source::HeuristicLuby => "heuristic-luby",
            Source::HeuristicMindeg => "heuristic-mindeg",
            Source::Ensemble => "ensemble",
            Source::Ic => "ic",
            Source::Vc => "vc",
            Source::Ilp => "ilp",
            Source::Oracle => "oracle",
        };
        f.write_str(s)
    }
}

/// A candidate odd cycle transversal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OctSolution {
    /// Sorted, duplicate-free vertex ids.
    pub vertices: Vec<usize>,
    pub verified: bool,
    pub source: Source,
}

impl OctSolution {
    /// Sorts `vertices` and checks the certificate against `g`.
    pub fn certified(g: &Graph, mut vertices: Vec<usize>, source: Source) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        let verified = verify_oct(g, &vertices);
        OctSolution {
            vertices,
            verified,
            source,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    Completed,
    Deadline,
    Refused,
    Error,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::Completed => "completed",
            Termination::Deadline => "deadline",
            Termination::Refused => "refused",
            Termination::Error => "error",
        })
    }
}

/// Outcome of one solver run.
#[derive(Debug, Clone, Serialize)]
pub struct SolverReport {
    pub solution: OctSolution,
    pub lower: usize,
    pub upper: usize,
    pub optimal: bool,
    pub elapsed: f64,
    pub seed: u64,
    pub termination: Termination,
    pub iterations: u64,
}

impl SolverReport {
    /// Checks `lower <= upper`, that optimality pins both bounds to the
    /// solution size, and that the solution is verified.
    pub fn is_consistent(&self) -> bool {
        self.lower <= self.upper
            && self.solution.verified
            && self.upper >= self.solution.len()
            && (!self.optimal || (self.lower == self.upper && self.upper == self.solution.len()))
    }
}

/// Cooperative stop condition: an optional wall-clock deadline, an optional
/// external cancel flag, and an optional work budget counted by the solver.
#[derive(Debug, Clone, Default)]
pub struct Deadline {
    at: Option<Instant>,
    cancel: Option<Arc<AtomicBool>>,
}

impl Deadline {
    pub fn never() -> Self {
        Deadline::default()
    }

    pub fn after(timeout: Duration) -> Self {
        Deadline {
            at: Some(Instant::now() + timeout),
            cancel: None,
        }
    }

    /// `None` means no deadline.
    pub fn from_secs(timeout: Option<f64>) -> Self {
        match timeout {
            Some(t) => Deadline::after(Duration::from_secs_f64(t.max(0.0))),
            None => Deadline::never(),
        }
    }

    pub fn with_cancel(mut self, flag: Arc<AtomicBool>) -> Self {
        self.cancel = Some(flag);
        self
    }

    pub fn expired(&self) -> bool {
        self.at.is_some_and(|t| Instant::now() >= t)
            || self
                .cancel
                .as_ref()
                .is_some_and(|c| c.load(Ordering::Relaxed))
    }
}

/// SplitMix64 finalizer used to derive independent per-task seeds.
pub fn mix_seed(parts: &[u64]) -> u64 {
    let mut z: u64 = 0x9E37_79B9_7F4A_7C15;
    for &p in parts {
        z = z.wrapping_add(p).wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::cycle;

    #[test]
    fn certified_sorts_and_checks() {
        let s = OctSolution::certified(&cycle(5), vec![3, 3], Source::Oracle);
        assert_eq!(s.vertices, vec![3]);
        assert!(s.verified);
        assert!(!OctSolution::certified(&cycle(5), vec![], Source::Oracle).verified);
    }

    #[test]
    fn deadline_cancel_flag() {
        let flag = Arc::new(AtomicBool::new(false));
        let d = Deadline::never().with_cancel(flag.clone());
        assert!(!d.expired());
        flag.store(true, Ordering::Relaxed);
        assert!(d.expired());
        assert!(Deadline::after(Duration::ZERO).expired());
    }

    #[test]
    fn mixed_seeds_differ() {
        assert_ne!(mix_seed(&[1, 0, 0]), mix_seed(&[1, 0, 1]));
        assert_eq!(mix_seed(&[7, 2]), mix_seed(&[7, 2]));
    }
}
