#![allow(dead_code)]

use oct_core::generators::erdos_renyi;
use oct_core::Graph;

pub const DENSITIES: [f64; 5] = [0.15, 0.25, 0.35, 0.5, 0.7];

/// Deterministic small random graph: `n` cycles through `lo..=hi`, the
/// density through [`DENSITIES`].
pub fn small_graph(seed: u64, lo: usize, hi: usize) -> Graph {
    let span = (hi - lo + 1) as u64;
    let n = lo + (seed % span) as usize;
    let p = DENSITIES[((seed / span) % DENSITIES.len() as u64) as usize];
    erdos_renyi(n, p, seed).unwrap()
}

/// Two-colors `g` minus `removed` by BFS.
pub fn bipartite_without(g: &Graph, removed: &[bool]) -> bool {
    let mut color = vec![u8::MAX; g.n()];
    let mut queue = std::collections::VecDeque::new();
    for s in g.vertices() {
        if removed[s] || color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if removed[w] {
                    continue;
                }
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_transversal(g: &Graph, s: &[usize]) -> bool {
    let mut removed = vec![false; g.n()];
    for &v in s {
        removed[v] = true;
    }
    bipartite_without(g, &removed)
}

/// Minimum odd cycle transversal size by scanning every vertex subset.
pub fn oct_by_scan(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 20, "scan oracle is exponential");
    let mut best = n;
    for mask in 0u32..1 << n {
        let k = mask.count_ones() as usize;
        if k >= best {
            continue;
        }
        let removed: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        if bipartite_without(g, &removed) {
            best = k;
        }
    }
    best
}

/// Largest minimum degree over all subgraphs, by repeated peeling.
pub fn degeneracy(g: &Graph) -> usize {
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut gone = vec![false; g.n()];
    let mut d = 0;
    for _ in 0..g.n() {
        let v = (0..g.n())
            .filter(|&v| !gone[v])
            .min_by_key(|&v| deg[v])
            .unwrap();
        d = d.max(deg[v]);
        gone[v] = true;
        for &w in g.neighbors(v) {
            if !gone[w] {
                deg[w] -= 1;
            }
        }
    }
    d
}
