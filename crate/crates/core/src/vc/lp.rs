//! Half-integral optimum of the vertex cover LP relaxation via maximum
//! matching on the bipartite double cover.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::Graph;

/// LP value of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HalfValue {
    Zero,
    Half,
    One,
}

impl HalfValue {
    /// Twice the value, as an integer.
    pub fn doubled(self) -> usize {
        match self {
            HalfValue::Zero => 0,
            HalfValue::Half => 1,
            HalfValue::One => 2,
        }
    }
}

const FREE: usize = usize::MAX;

/// Hopcroft–Karp over the double cover: left copy `u` connects to right copy
/// `v` for each edge `uv` of the live graph, in both directions.
struct DoubleCover<'a> {
    adj: &'a [Vec<usize>],
    alive: &'a [bool],
    match_left: Vec<usize>,
    match_right: Vec<usize>,
    dist: Vec<usize>,
}

impl<'a> DoubleCover<'a> {
    fn new(adj: &'a [Vec<usize>], alive: &'a [bool]) -> Self {
        let n = adj.len();
        DoubleCover {
            adj,
            alive,
            match_left: vec![FREE; n],
            match_right: vec![FREE; n],
            dist: vec![usize::MAX; n],
        }
    }

    fn layer(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for u in 0..self.adj.len() {
            if self.alive[u] && self.match_left[u] == FREE {
                self.dist[u] = 0;
                queue.push_back(u);
            } else {
                self.dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !self.alive[v] {
                    continue;
                }
                let w = self.match_right[v];
                if w == FREE {
                    found = true;
                } else if self.dist[w] == usize::MAX {
                    self.dist[w] = self.dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        found
    }

    fn augment(&mut self, u: usize) -> bool {
        for i in 0..self.adj[u].len() {
            let v = self.adj[u][i];
            if !self.alive[v] {
                continue;
            }
            let w = self.match_right[v];
            if w == FREE || (self.dist[w] == self.dist[u] + 1 && self.augment(w)) {
                self.match_left[u] = v;
                self.match_right[v] = u;
                return true;
            }
        }
        self.dist[u] = usize::MAX;
        false
    }

    fn run(&mut self) {
        while self.layer() {
            for u in 0..self.adj.len() {
                if self.alive[u] && self.match_left[u] == FREE {
                    self.augment(u);
                }
            }
        }
    }

    /// König cover: left vertices not reached by alternating paths from free
    /// left vertices, plus right vertices that are reached.
    fn doubled_values(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut seen_left = vec![false; n];
        let mut seen_right = vec![false; n];
        let mut queue = VecDeque::new();
        for (u, seen) in seen_left.iter_mut().enumerate() {
            if self.alive[u] && self.match_left[u] == FREE {
                *seen = true;
                queue.push_back(u);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if self.alive[v] && !seen_right[v] {
                    seen_right[v] = true;
                    let w = self.match_right[v];
                    if w != FREE && !seen_left[w] {
                        seen_left[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        (0..n)
            .map(|v| {
                if !self.alive[v] {
                    0
                } else {
                    usize::from(!seen_left[v]) + usize::from(seen_right[v])
                }
            })
            .collect()
    }
}

/// Doubled LP values (0, 1 or 2) for the live part of an adjacency
/// structure. Dead vertices get 0.
pub(crate) fn doubled_lp(adj: &[Vec<usize>], alive: &[bool]) -> Vec<usize> {
    let mut dc = DoubleCover::new(adj, alive);
    dc.run();
    dc.doubled_values()
}

/// Optimal half-integral solution of the vertex cover LP relaxation.
pub fn lp_half_integral(g: &Graph) -> Vec<HalfValue> {
    let adj: Vec<Vec<usize>> = g.vertices().map(|v| g.neighbors(v).to_vec()).collect();
    doubled_lp(&adj, &vec![true; g.n()])
        .into_iter()
        .map(|x| match x {
            0 => HalfValue::Zero,
            1 => HalfValue::Half,
            _ => HalfValue::One,
        })
        .collect()
}

/// `ceil` of the LP optimum, a lower bound on the minimum vertex cover.
pub fn lp_lower_bound(g: &Graph) -> usize {
    lp_half_integral(g)
        .iter()
        .map(|x| x.doubled())
        .sum::<usize>()
        .div_ceil(2)
}
