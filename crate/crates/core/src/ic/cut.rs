//! Minimum vertex cuts by vertex splitting and BFS augmenting paths.

use std::collections::VecDeque;

use crate::error::{OctError, Result};
use crate::graph::Graph;
use crate::solution::Deadline;

const INF: u32 = u32::MAX / 2;

#[derive(Debug, Clone, Copy)]
struct Arc {
    to: usize,
    cap: u32,
}

/// Unit-capacity vertex-split network. Node `2v` is the entry of `v`, `2v+1`
/// its exit; the last two nodes are the super source and super sink.
pub(crate) struct CutNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    source: usize,
    sink: usize,
    n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum CutOutcome {
    Cut(Vec<usize>),
    /// The minimum cut is larger than the limit.
    ExceedsLimit,
    /// Some source reaches some sink through uncuttable vertices only.
    Infeasible,
    Interrupted,
}

impl CutNetwork {
    /// `cuttable[v]` decides whether `v` may belong to the cut.
    pub(crate) fn new(g: &Graph, cuttable: &[bool]) -> Self {
        let n = g.n();
        let mut net = CutNetwork {
            arcs: Vec::with_capacity(4 * (n + 2 * g.m())),
            out: vec![Vec::new(); 2 * n + 2],
            source: 2 * n,
            sink: 2 * n + 1,
            n,
        };
        for (v, &c) in cuttable.iter().enumerate() {
            net.add(2 * v, 2 * v + 1, if c { 1 } else { INF });
        }
        for (u, v) in g.edges() {
            net.add(2 * u + 1, 2 * v, INF);
            net.add(2 * v + 1, 2 * u, INF);
        }
        net
    }

    fn add(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    pub(crate) fn attach_source(&mut self, v: usize) {
        self.add(self.source, 2 * v, INF);
    }

    pub(crate) fn attach_sink(&mut self, v: usize) {
        self.add(2 * v + 1, self.sink, INF);
    }

    /// BFS over residual arcs from the super source; returns parent arcs.
    fn search(&self) -> (Vec<usize>, bool) {
        let mut parent = vec![usize::MAX; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        let mut queue = VecDeque::from([self.source]);
        seen[self.source] = true;
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let arc = self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    parent[arc.to] = a;
                    if arc.to == self.sink {
                        return (parent, true);
                    }
                    queue.push_back(arc.to);
                }
            }
        }
        (parent, false)
    }

    /// Edmonds–Karp until no augmenting path remains or the flow exceeds
    /// `limit`. The deadline is polled between augmenting paths.
    pub(crate) fn solve(mut self, limit: usize, deadline: &Deadline) -> CutOutcome {
        let mut flow = 0usize;
        loop {
            if deadline.expired() {
                return CutOutcome::Interrupted;
            }
            let (parent, found) = self.search();
            if !found {
                break;
            }
            let mut bottleneck = INF;
            let mut x = self.sink;
            while x != self.source {
                let a = parent[x];
                bottleneck = bottleneck.min(self.arcs[a].cap);
                x = self.arcs[a ^ 1].to;
            }
            if bottleneck >= INF {
                return CutOutcome::Infeasible;
            }
            let mut x = self.sink;
            while x != self.source {
                let a = parent[x];
                self.arcs[a].cap -= bottleneck;
                self.arcs[a ^ 1].cap += bottleneck;
                x = self.arcs[a ^ 1].to;
            }
            flow += bottleneck as usize;
            if flow > limit {
                return CutOutcome::ExceedsLimit;
            }
        }
        // the cut is every split arc leaving the residual-reachable side
        let mut reach = vec![false; self.out.len()];
        let mut queue = VecDeque::from([self.source]);
        reach[self.source] = true;
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let arc = self.arcs[a];
                if arc.cap > 0 && !reach[arc.to] {
                    reach[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        let cut: Vec<usize> = (0..self.n)
            .filter(|&v| reach[2 * v] && !reach[2 * v + 1])
            .collect();
        debug_assert_eq!(cut.len(), flow);
        CutOutcome::Cut(cut)
    }
}

/// Why a vertex cut could not be produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutError {
    /// A source is adjacent to a sink, so no vertex set separates them.
    Adjacent { source: usize, sink: usize },
}

/// Minimum-cardinality vertex set, disjoint from both terminal sets, whose
/// removal disconnects every source from every sink.
pub fn min_vertex_cut(
    g: &Graph,
    sources: &[usize],
    sinks: &[usize],
) -> Result<std::result::Result<Vec<usize>, CutError>> {
    let n = g.n();
    let mut role = vec![0u8; n];
    for &s in sources {
        if s >= n {
            return Err(OctError::Contract(format!("source {s} out of range")));
        }
        role[s] = 1;
    }
    for &t in sinks {
        if t >= n {
            return Err(OctError::Contract(format!("sink {t} out of range")));
        }
        if role[t] == 1 {
            return Err(OctError::Contract(format!("{t} is both source and sink")));
        }
        role[t] = 2;
    }
    for &s in sources {
        if let Some(&t) = g.neighbors(s).iter().find(|&&t| role[t] == 2) {
            return Ok(Err(CutError::Adjacent { source: s, sink: t }));
        }
    }
    let cuttable: Vec<bool> = role.iter().map(|&r| r == 0).collect();
    let mut net = CutNetwork::new(g, &cuttable);
    for &s in sources {
        net.attach_source(s);
    }
    for &t in sinks {
        net.attach_sink(t);
    }
    match net.solve(usize::MAX, &Deadline::never()) {
        CutOutcome::Cut(cut) => Ok(Ok(cut)),
        CutOutcome::Infeasible => unreachable!("adjacent terminals were rejected"),
        other => unreachable!("unbounded cut returned {other:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn path_cut() {
        assert_eq!(min_vertex_cut(&path(3), &[0], &[2]).unwrap(), Ok(vec![1]));
    }

    #[test]
    fn two_disjoint_paths() {
        // 0-1-4 and 0-2-3-4
        let g = Graph::from_edges(5, [(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(min_vertex_cut(&g, &[0], &[4]).unwrap().unwrap().len(), 2);
    }

    #[test]
    fn adjacent_terminals_signal_distinctly() {
        assert_eq!(
            min_vertex_cut(&path(2), &[0], &[1]).unwrap(),
            Err(CutError::Adjacent { source: 0, sink: 1 })
        );
        assert!(min_vertex_cut(&path(2), &[0], &[0]).is_err());
    }

    #[test]
    fn disconnected_terminals_need_no_cut() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(min_vertex_cut(&g, &[0], &[3]).unwrap(), Ok(vec![]));
    }

    #[test]
    fn cut_separates() {
        let g = complete(6);
        let g = Graph::from_edges(6, g.edges().filter(|&(u, v)| (u, v) != (0, 5))).unwrap();
        let cut = min_vertex_cut(&g, &[0], &[5]).unwrap().unwrap();
        assert_eq!(cut, vec![1, 2, 3, 4]);
    }
}
