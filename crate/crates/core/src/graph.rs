//! Simple undirected graphs over the vertex set `0..n`, two-colorings and
//! the feasibility certificate for odd cycle transversals.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{OctError, Result};

/// Immutable simple undirected graph. Adjacency lists are strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are merged; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(OctError::InvalidArgument(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(OctError::InvalidArgument(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_unsorted_adjacency(adj))
    }

    /// Takes ownership of symmetric adjacency lists that may be unsorted or
    /// contain duplicates.
    pub(crate) fn from_unsorted_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        let mut m2 = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m2 += list.len();
        }
        Graph { adj, m: m2 / 2 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.adj.len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&v| v <= u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Subgraph induced by `keep`, relabeled in the order given. Returns the
    /// subgraph and, for each new id, the original id.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&u| (new_id[u] != usize::MAX).then_some(new_id[u]))
                    .collect()
            })
            .collect();
        (Self::from_unsorted_adjacency(adj), keep.to_vec())
    }

    /// Subgraph with `removed` deleted, remaining vertices relabeled in
    /// ascending order.
    pub fn without(&self, removed: &[usize]) -> (Graph, Vec<usize>) {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            gone[v] = true;
        }
        let keep: Vec<usize> = self.vertices().filter(|&v| !gone[v]).collect();
        self.induced(&keep)
    }

    /// Checks the structural invariants (symmetry, strict ordering, no loops).
    pub fn is_well_formed(&self) -> bool {
        let mut half = 0;
        for (v, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &u in list {
                if u == v || u >= self.n() || !self.has_edge(u, v) {
                    return false;
                }
            }
            half += list.len();
        }
        half == 2 * self.m
    }
}

/// Color of a vertex in a partial two-coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
    Deleted,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::Deleted => Side::Deleted,
        }
    }
}

/// Per-vertex coloring in which no edge joins two equal non-deleted colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoColoring {
    pub colors: Vec<Side>,
}

impl TwoColoring {
    pub fn side(&self, v: usize) -> Side {
        self.colors[v]
    }

    /// True when no edge of `g` has both endpoints on the same non-deleted side.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.colors.len() == g.n()
            && g.edges().all(|(u, v)| {
                let (a, b) = (self.colors[u], self.colors[v]);
                a == Side::Deleted || a != b
            })
    }
}

/// BFS two-coloring of `g` with the vertices in `deleted` marked as such.
/// Components are rooted at their lowest id, roots colored left.
fn two_color_except(g: &Graph, deleted: &[bool]) -> Option<TwoColoring> {
    let n = g.n();
    let mut colors: Vec<Option<Side>> = (0..n)
        .map(|v| deleted[v].then_some(Side::Deleted))
        .collect();
    let mut queue = VecDeque::new();
    for root in 0..n {
        if colors[root].is_some() {
            continue;
        }
        colors[root] = Some(Side::Left);
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            let cv = colors[v].unwrap();
            for &u in g.neighbors(v) {
                match colors[u] {
                    None => {
                        colors[u] = Some(cv.opposite());
                        queue.push_back(u);
                    }
                    Some(Side::Deleted) => {}
                    Some(cu) if cu == cv => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(TwoColoring {
        colors: colors.into_iter().map(Option::unwrap).collect(),
    })
}

/// Returns a two-coloring iff `g` has no odd cycle.
pub fn is_bipartite(g: &Graph) -> Option<TwoColoring> {
    two_color_except(g, &vec![false; g.n()])
}

/// Two-coloring of `g` after deleting `s`, if one exists.
///
/// # Panics
/// If `s` contains an id outside `0..g.n()`.
pub fn coloring_after_deletion(g: &Graph, s: &[usize]) -> Option<TwoColoring> {
    let mut deleted = vec![false; g.n()];
    for &v in s {
        assert!(v < g.n(), "vertex {v} out of range for {} vertices", g.n());
        deleted[v] = true;
    }
    two_color_except(g, &deleted)
}

/// True iff `g` with `s` deleted is bipartite.
///
/// # Panics
/// If `s` contains an id outside `0..g.n()`.
pub fn verify_oct(g: &Graph, s: &[usize]) -> bool {
    coloring_after_deletion(g, s).is_some()
}

/// Repeatedly removes a minimum-degree vertex (lowest id on ties). Returns the
/// removal order and the degeneracy, i.e. the largest degree seen at removal.
pub fn degeneracy_ordering(g: &Graph) -> (Vec<usize>, usize) {
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = g.vertices().map(|v| (degree[v], v)).collect();
    let mut removed = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    let mut d = 0;
    while let Some((deg, v)) = queue.pop_first() {
        d = d.max(deg);
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                queue.remove(&(degree[u], u));
                degree[u] -= 1;
                queue.insert((degree[u], u));
            }
        }
    }
    (order, d)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn construction_merges_duplicates() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert!(g.is_well_formed());
    }

    #[test]
    fn construction_rejects_loops_and_range() {
        assert!(Graph::from_edges(2, [(1, 1)]).is_err());
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }

    #[test]
    fn edges_are_sorted() {
        let g = complete(3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn bipartite_examples() {
        assert!(is_bipartite(&cycle(4)).is_some());
        assert!(is_bipartite(&cycle(5)).is_none());
        assert!(is_bipartite(&Graph::empty(0)).is_some());
        let c = is_bipartite(&cycle(4)).unwrap();
        assert_eq!(
            c.colors,
            vec![Side::Left, Side::Right, Side::Left, Side::Right]
        );
        assert!(c.is_valid_for(&cycle(4)));
    }

    #[test]
    fn verify_examples() {
        assert!(verify_oct(&cycle(5), &[0]));
        assert!(!verify_oct(&cycle(5), &[]));
        assert!(verify_oct(&complete(5), &[0, 2, 4]));
        assert!(!verify_oct(&complete(5), &[0, 2]));
        let g = complete(6);
        let all: Vec<usize> = g.vertices().collect();
        assert!(verify_oct(&g, &all));
    }

    #[test]
    #[should_panic]
    fn verify_rejects_out_of_range() {
        verify_oct(&cycle(3), &[3]);
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(degeneracy_ordering(&path(6)).1, 1);
        assert_eq!(degeneracy_ordering(&star(4)).1, 1);
        assert_eq!(degeneracy_ordering(&complete(4)).1, 3);
        assert_eq!(degeneracy_ordering(&cycle(5)).1, 2);
        assert_eq!(degeneracy_ordering(&cycle(5)).0, vec![0, 1, 2, 3, 4]);
        assert_eq!(degeneracy_ordering(&Graph::empty(0)), (vec![], 0));
    }

    #[test]
    fn induced_relabels() {
        let (h, map) = cycle(5).induced(&[4, 0, 1]);
        assert_eq!(map, vec![4, 0, 1]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let (h, map) = cycle(5).without(&[2]);
        assert_eq!(map, vec![0, 1, 3, 4]);
        assert_eq!(h.m(), 3);
    }
}
