//! Instance generators.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// K_{k−2} joined to the cycle C_{n−k+2}. Clique ids come first.
pub fn gen_wheel(k: usize, n: usize) -> Result<Graph> {
    if k < 2 || n < k + 1 {
        return Err(Error::Domain(format!("no generalized wheel for k = {k}, n = {n}")));
    }
    let c = (k - 2) as VertexId;
    let n = n as VertexId;
    let mut edges = Vec::new();
    for u in 0..c {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    for v in c..n - 1 {
        edges.push((v, v + 1));
    }
    edges.push((c, n - 1));
    Graph::from_edges(n as usize, edges)
}

/// Uniform graph on `n` vertices with exactly `m` edges.
pub fn gen_gnm(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let total = n * n.saturating_sub(1) / 2;
    if m > total {
        return Err(Error::Domain(format!("{m} edges do not fit on {n} vertices")));
    }
    // offsets[u] is the index of pair (u, u+1) in lexicographic pair order
    let offsets: Vec<usize> = (0..n).map(|u| u * n - u * (u + 1) / 2).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = sample(&mut rng, total, m).into_vec();
    picked.sort_unstable();
    let edges = picked.into_iter().map(|idx| {
        let u = offsets.partition_point(|&o| o <= idx) - 1;
        let v = u + 1 + idx - offsets[u];
        (u as VertexId, v as VertexId)
    });
    Graph::from_edges(n, edges)
}

/// Seeded random graph with exactly (k−1)n − t + excess edges.
pub fn gen_near_threshold(n: usize, k: usize, t: usize, excess: usize, seed: u64) -> Result<Graph> {
    let target = (k as i64 - 1) * n as i64 - t as i64 + excess as i64;
    if target < 0 {
        return Err(Error::Domain(format!("edge target {target} is negative")));
    }
    gen_gnm(n, target as usize, seed)
}
