//! Exhaustive reference solvers. Deliberately naive: subsets are tried by
//! increasing size in lexicographic order and checked with a bitmask
//! predicate that shares no code with the real solvers.

use crate::error::{OctError, Result};
use crate::graph::Graph;

pub const DEFAULT_CAP: usize = 20;

/// Largest instance accepted at all (bitmask width).
const HARD_CAP: usize = 64;

fn masks(g: &Graph) -> Vec<u64> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | (1 << u)))
        .collect()
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap.min(HARD_CAP) {
        return Err(OctError::Refused {
            n: g.n(),
            cap: cap.min(HARD_CAP),
        });
    }
    Ok(())
}

/// True iff the vertices outside `deleted` induce a bipartite graph.
fn bipartite_without(adj: &[u64], deleted: u64) -> bool {
    let n = adj.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut unseen = all & !deleted;
    while unseen != 0 {
        let root = unseen.trailing_zeros() as usize;
        // layers alternate sides; a neighbor inside the same side means an odd cycle
        let mut side = [1u64 << root, 0u64];
        let mut frontier = 1u64 << root;
        let mut parity = 0;
        unseen &= !frontier;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                let nb = adj[v] & !deleted;
                if nb & side[parity] != 0 {
                    return false;
                }
                next |= nb & unseen;
            }
            unseen &= !next;
            parity ^= 1;
            side[parity] |= next;
            frontier = next;
        }
    }
    true
}

fn is_cover(adj: &[u64], set: u64) -> bool {
    (0..adj.len()).all(|v| set & (1 << v) != 0 || adj[v] & !set == 0)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// First subset (by size, then lexicographically) satisfying `ok`.
fn first_subset(n: usize, ok: impl Fn(u64) -> bool) -> (usize, Vec<usize>) {
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let set = idx.iter().fold(0u64, |m, &v| m | (1 << v));
            if ok(set) {
                return (k, idx);
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    unreachable!("the full vertex set always qualifies")
}

/// Minimum odd cycle transversal by exhaustive search.
pub fn brute_force_oct(g: &Graph, cap: usize) -> Result<(usize, Vec<usize>)> {
    check_cap(g, cap)?;
    let adj = masks(g);
    Ok(first_subset(g.n(), |s| bipartite_without(&adj, s)))
}

/// Minimum vertex cover by exhaustive search.
pub fn brute_force_vc(g: &Graph, cap: usize) -> Result<(usize, Vec<usize>)> {
    check_cap(g, cap)?;
    let adj = masks(g);
    Ok(first_subset(g.n(), |s| is_cover(&adj, s)))
}

/// Minimum OCT size over transversals avoiding every vertex in `avoid`.
pub fn brute_force_oct_avoiding(g: &Graph, avoid: &[usize], cap: usize) -> Result<Option<usize>> {
    check_cap(g, cap)?;
    let adj = masks(g);
    let forbidden = avoid.iter().fold(0u64, |m, &v| m | (1 << v));
    let mut best = None;
    for set in 0..(1u64 << g.n()) {
        if set & forbidden == 0 && bipartite_without(&adj, set) {
            let k = set.count_ones() as usize;
            best = Some(best.map_or(k, |b: usize| b.min(k)));
        }
    }
    Ok(best)
}
