//! Seeded random graph families and look-alike configurations derived from a
//! reference graph.
//!
//! Pair-based generators walk the pairs `u < v` in lexicographic order and
//! draw exactly one uniform number per pair, so a configuration and seed
//! always give the same graph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{OctError, Result};
use crate::graph::Graph;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(OctError::InvalidArgument(format!(
            "{name} = {p} is not in [0, 1]"
        )))
    }
}

pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability("p", p)?;
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Vertices `0..n_o` form the transversal pool; each other vertex is left
/// with probability `b`. Pairs inside one side are never joined, so the pool
/// is a transversal and `OPT <= n_o`.
pub fn tunable_oct(n: usize, p: f64, n_o: usize, b: f64, seed: u64) -> Result<Graph> {
    check_probability("p", p)?;
    check_probability("b", b)?;
    if n_o > n {
        return Err(OctError::InvalidArgument(format!(
            "n_o = {n_o} exceeds n = {n}"
        )));
    }
    let mut r = rng(seed);
    let side: Vec<Option<bool>> = (0..n)
        .map(|v| {
            if v < n_o {
                None
            } else {
                Some(r.gen::<f64>() < b)
            }
        })
        .collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let hit = r.gen::<f64>() < p;
            let same_side = matches!((side[u], side[v]), (Some(a), Some(c)) if a == c);
            if hit && !same_side {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Joins `u v` with probability `d_u d_v / Σ d`, clamped to 1. Returns the
/// graph and the number of clamped pairs.
pub fn chung_lu(degrees: &[f64], seed: u64) -> Result<(Graph, usize)> {
    if let Some(d) = degrees.iter().find(|d| !(d.is_finite() && **d >= 0.0)) {
        return Err(OctError::InvalidArgument(format!(
            "degree {d} is not a finite non-negative number"
        )));
    }
    let n = degrees.len();
    let total: f64 = degrees.iter().sum();
    let mut r = rng(seed);
    let mut edges = Vec::new();
    let mut clamped = 0;
    if total == 0.0 {
        return Ok((Graph::empty(n), 0));
    }
    for u in 0..n {
        for v in u + 1..n {
            let mut p = degrees[u] * degrees[v] / total;
            if p > 1.0 {
                p = 1.0;
                clamped += 1;
            }
            if r.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Ok((Graph::from_edges(n, edges)?, clamped))
}

/// Preferential attachment from a `(c+1)`-clique; every later vertex joins
/// `c` distinct earlier vertices drawn proportionally to degree.
pub fn barabasi_albert(n: usize, c: usize, seed: u64) -> Result<Graph> {
    if c == 0 || c >= n {
        return Err(OctError::InvalidArgument(format!(
            "need 1 <= c < n, got c = {c}, n = {n}"
        )));
    }
    let mut r = rng(seed);
    let mut degree = vec![0usize; n];
    let mut edges = Vec::new();
    for u in 0..=c {
        for v in u + 1..=c {
            edges.push((u, v));
            degree[u] += 1;
            degree[v] += 1;
        }
    }
    let mut picked = vec![false; n];
    for t in c + 1..n {
        let mut targets = Vec::with_capacity(c);
        let mut pool: usize = degree[..t].iter().sum();
        for _ in 0..c {
            let mut x = r.gen_range(0..pool);
            let target = (0..t)
                .filter(|&v| !picked[v])
                .find(|&v| {
                    if x < degree[v] {
                        true
                    } else {
                        x -= degree[v];
                        false
                    }
                })
                .expect("draw lies inside the pool");
            picked[target] = true;
            pool -= degree[target];
            targets.push(target);
        }
        for v in targets {
            picked[v] = false;
            degree[v] += 1;
            degree[t] += 1;
            edges.push((v, t));
        }
    }
    Graph::from_edges(n, edges)
}

/// A generator family with its parameters and seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorConfig {
    ErdosRenyi {
        n: usize,
        p: f64,
        seed: u64,
    },
    TunableOct {
        n: usize,
        p: f64,
        n_o: usize,
        b: f64,
        seed: u64,
    },
    ChungLu {
        degrees: Vec<f64>,
        seed: u64,
    },
    BarabasiAlbert {
        n: usize,
        c: usize,
        seed: u64,
    },
}

impl GeneratorConfig {
    pub fn family(&self) -> &'static str {
        match self {
            GeneratorConfig::ErdosRenyi { .. } => "erdos_renyi",
            GeneratorConfig::TunableOct { .. } => "tunable_oct",
            GeneratorConfig::ChungLu { .. } => "chung_lu",
            GeneratorConfig::BarabasiAlbert { .. } => "barabasi_albert",
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        match self {
            GeneratorConfig::ErdosRenyi { n, p, seed } => erdos_renyi(*n, *p, *seed),
            GeneratorConfig::TunableOct { n, p, n_o, b, seed } => {
                tunable_oct(*n, *p, *n_o, *b, *seed)
            }
            GeneratorConfig::ChungLu { degrees, seed } => chung_lu(degrees, *seed).map(|(g, _)| g),
            GeneratorConfig::BarabasiAlbert { n, c, seed } => barabasi_albert(*n, *c, *seed),
        }
    }
}

/// Configurations mimicking `g`: Erdős–Rényi and Tunable-OCT with the same
/// density (`b = 0.5`, `n_o = oct_upper`), Chung–Lu on the degree sequence,
/// and Barabási–Albert with `c = max(1, round(m / n))`. Density-based
/// families need `n >= 2`; attachment needs at least one edge.
pub fn lookalike_configs(g: &Graph, oct_upper: usize, seed: u64) -> Result<Vec<GeneratorConfig>> {
    let n = g.n();
    if oct_upper > n {
        return Err(OctError::InvalidArgument(format!(
            "oct upper bound {oct_upper} exceeds n = {n}"
        )));
    }
    let mut out = Vec::new();
    if n >= 2 {
        let p = g.m() as f64 / (n * (n - 1) / 2) as f64;
        out.push(GeneratorConfig::ErdosRenyi { n, p, seed });
        out.push(GeneratorConfig::TunableOct {
            n,
            p,
            n_o: oct_upper,
            b: 0.5,
            seed,
        });
    }
    out.push(GeneratorConfig::ChungLu {
        degrees: g.vertices().map(|v| g.degree(v) as f64).collect(),
        seed,
    });
    if n >= 2 && g.m() > 0 {
        let c = ((g.m() as f64 / n as f64).round() as usize).clamp(1, n - 1);
        out.push(GeneratorConfig::BarabasiAlbert { n, c, seed });
    }
    Ok(out)
}
