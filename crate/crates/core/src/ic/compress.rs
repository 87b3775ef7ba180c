//! The compression step: shrink a transversal of size `k + 1` to size `k`
//! or prove that none exists.
//!
//! Each vertex of the old transversal is assigned to the new transversal,
//! the left side or the right side. Adjacent vertices never share a side,
//! and the first non-deleted vertex is pinned left since a global color swap
//! maps assignments onto each other. For a fixed assignment the rest of the
//! graph keeps its old 2-coloring per component or flips it; neighbors of
//! the pinned vertices become "keep" or "flip" terminals, and the cheapest
//! repair is a minimum vertex cut between the two terminal classes.

use crate::error::{OctError, Result};
use crate::graph::{coloring_after_deletion, verify_oct, Graph, Side};
use crate::ic::cut::{CutNetwork, CutOutcome};
use crate::solution::Deadline;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum CompressOutcome {
    Compressed(Vec<usize>),
    Impossible,
    Interrupted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Deleted,
    Left,
    Right,
}

struct Search<'a> {
    h: &'a Graph,
    s: &'a [usize],
    in_s: Vec<Option<usize>>,
    coloring: Vec<Side>,
    /// `h` without the edges touching `s`.
    base: Graph,
    cuttable: Vec<bool>,
    assignment: Vec<Slot>,
    deleted: usize,
    k: usize,
    deadline: &'a Deadline,
}

enum Step {
    Continue,
    Found(Vec<usize>),
    Stop,
}

impl Search<'_> {
    fn allowed(&self, pos: usize, slot: Slot) -> bool {
        match slot {
            Slot::Deleted => self.deleted < self.k,
            Slot::Left | Slot::Right => {
                let first_placed = self.assignment[..pos].iter().all(|&a| a == Slot::Deleted);
                if first_placed && slot == Slot::Right {
                    return false;
                }
                self.h
                    .neighbors(self.s[pos])
                    .iter()
                    .all(|&u| match self.in_s[u] {
                        Some(q) if q < pos => self.assignment[q] != slot,
                        _ => true,
                    })
            }
        }
    }

    /// Reflected ternary Gray order over positions, pruned as it goes.
    fn enumerate(&mut self, pos: usize, forward: bool) -> Step {
        if pos == self.s.len() {
            return self.evaluate();
        }
        let mut slots = [Slot::Deleted, Slot::Left, Slot::Right];
        if !forward {
            slots.reverse();
        }
        for (j, &slot) in slots.iter().enumerate() {
            if !self.allowed(pos, slot) {
                continue;
            }
            self.assignment[pos] = slot;
            if slot == Slot::Deleted {
                self.deleted += 1;
            }
            let step = self.enumerate(pos + 1, forward ^ (j % 2 == 1));
            if slot == Slot::Deleted {
                self.deleted -= 1;
            }
            if !matches!(step, Step::Continue) {
                return step;
            }
        }
        Step::Continue
    }

    fn evaluate(&mut self) -> Step {
        if self.deadline.expired() {
            return Step::Stop;
        }
        let budget = self.k - self.deleted;
        let mut net = CutNetwork::new(&self.base, &self.cuttable);
        let mut any = false;
        for (pos, &v) in self.s.iter().enumerate() {
            // neighbors of a left vertex must end right, and vice versa
            let wanted = match self.assignment[pos] {
                Slot::Deleted => continue,
                Slot::Left => Side::Right,
                Slot::Right => Side::Left,
            };
            for &y in self.h.neighbors(v) {
                if self.in_s[y].is_some() {
                    continue;
                }
                any = true;
                if self.coloring[y] == wanted {
                    net.attach_source(y);
                } else {
                    net.attach_sink(y);
                }
            }
        }
        let cut = if any {
            match net.solve(budget, self.deadline) {
                CutOutcome::Cut(c) => c,
                CutOutcome::ExceedsLimit => return Step::Continue,
                CutOutcome::Interrupted => return Step::Stop,
                CutOutcome::Infeasible => unreachable!("every terminal is cuttable"),
            }
        } else {
            Vec::new()
        };
        let mut out: Vec<usize> = self
            .s
            .iter()
            .zip(&self.assignment)
            .filter(|(_, &a)| a == Slot::Deleted)
            .map(|(&v, _)| v)
            .chain(cut)
            .collect();
        out.sort_unstable();
        Step::Found(out)
    }
}

pub(crate) fn compress_with_deadline(
    h: &Graph,
    s: &[usize],
    deadline: &Deadline,
) -> Result<CompressOutcome> {
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.iter().any(|&v| v >= h.n()) {
        return Err(OctError::Contract("transversal vertex out of range".into()));
    }
    let coloring = coloring_after_deletion(h, &s)
        .ok_or_else(|| OctError::Contract("compress needs a feasible transversal".into()))?;
    if s.is_empty() {
        return Ok(CompressOutcome::Impossible);
    }
    let mut in_s = vec![None; h.n()];
    for (i, &v) in s.iter().enumerate() {
        in_s[v] = Some(i);
    }
    let k = s.len() - 1;
    let cuttable: Vec<bool> = in_s.iter().map(Option::is_none).collect();
    let base = Graph::from_edges(
        h.n(),
        h.edges().filter(|&(u, v)| cuttable[u] && cuttable[v]),
    )
    .expect("subgraph of a valid graph");
    let mut search = Search {
        h,
        s: &s,
        in_s,
        coloring: coloring.colors,
        base,
        cuttable,
        assignment: vec![Slot::Deleted; s.len()],
        deleted: 0,
        k,
        deadline,
    };
    Ok(match search.enumerate(0, true) {
        Step::Found(out) => {
            debug_assert!(out.len() <= k && verify_oct(h, &out));
            CompressOutcome::Compressed(out)
        }
        Step::Continue => CompressOutcome::Impossible,
        Step::Stop => CompressOutcome::Interrupted,
    })
}

/// Given a feasible transversal `s` of `h`, returns a feasible transversal of
/// size at most `|s| - 1`, or `None` if no such set exists.
pub fn compress(h: &Graph, s: &[usize]) -> Result<Option<Vec<usize>>> {
    match compress_with_deadline(h, s, &Deadline::never())? {
        CompressOutcome::Compressed(x) => Ok(Some(x)),
        CompressOutcome::Impossible => Ok(None),
        CompressOutcome::Interrupted => unreachable!("no deadline"),
    }
}
