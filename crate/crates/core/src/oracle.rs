//! Exhaustive search for the smallest induced subgraph of minimum degree k.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::peel::peel_to_core;

/// Largest graph the exhaustive search accepts.
pub const ORACLE_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub found: bool,
    pub min_size: Option<usize>,
    pub example_set: Option<VertexSet>,
}

/// Scans vertex subsets by size, then lexicographically, and returns the
/// first one that induces minimum degree at least `k`.
pub fn brute_min_subgraph(g: &Graph, k: usize) -> Result<OracleResult> {
    let n = g.n();
    if n > ORACLE_LIMIT {
        return Err(Error::TooLarge { n, limit: ORACLE_LIMIT });
    }
    let ids = g.vertices();
    let pos = |v| ids.binary_search(&v).expect("neighbour is a vertex");
    let adj: Vec<u32> = ids.iter().map(|&v| g.neighbors(v).iter().fold(0, |m, &u| m | 1 << pos(u))).collect();

    for size in (k + 1).max(1)..=n {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mask = idx.iter().fold(0u32, |m, &i| m | 1 << i);
            if idx.iter().all(|&i| (adj[i] & mask).count_ones() as usize >= k) {
                let set: VertexSet = idx.iter().map(|&i| ids[i]).collect();
                return Ok(OracleResult { found: true, min_size: Some(size), example_set: Some(set) });
            }
            // next combination in lexicographic order
            let Some(p) = (0..size).rev().find(|&p| idx[p] < n - size + p) else { break };
            idx[p] += 1;
            for q in p + 1..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    Ok(OracleResult { found: false, min_size: None, example_set: None })
}

/// True when G has minimum degree at least k and no proper subgraph does,
/// i.e. its smallest min-degree-k subgraph is G itself. Works at any size:
/// a proper subgraph misses some v and so lies inside the k-core of G − v.
pub fn min_size_is_n(g: &Graph, k: usize) -> bool {
    if g.min_degree().map_or(true, |d| d < k) {
        return false;
    }
    g.vertices().iter().all(|&v| peel_to_core(&g.delete(&VertexSet::singleton(v)).expect("vertex exists"), k).core.is_empty())
}
