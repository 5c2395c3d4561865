//! k-core peeling and the edge threshold that forces a non-empty core.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelResult {
    /// The k-core; empty when every vertex peels away.
    pub core: Graph,
    /// Removed vertices with their degree at the moment of removal.
    pub removed_order: Vec<(VertexId, usize)>,
}

/// Repeatedly removes the lowest-id vertex of degree at most `k - 1`.
pub fn peel_to_core(g: &Graph, k: usize) -> PeelResult {
    let mut degree: Vec<usize> = (0..g.universe() as VertexId).map(|v| g.degree(v)).collect();
    let mut alive = vec![false; g.universe()];
    let mut low = BTreeSet::new();
    for &v in g.vertices() {
        alive[v as usize] = true;
        if degree[v as usize] < k {
            low.insert(v);
        }
    }

    let mut removed_order = Vec::new();
    while let Some(v) = low.pop_first() {
        alive[v as usize] = false;
        removed_order.push((v, degree[v as usize]));
        for &u in g.neighbors(v) {
            if alive[u as usize] {
                degree[u as usize] -= 1;
                if degree[u as usize] < k {
                    low.insert(u);
                }
            }
        }
    }

    let removed: VertexSet = removed_order.iter().map(|&(v, _)| v).collect();
    let core = g.delete(&removed).expect("peeled vertices belong to the graph");
    PeelResult { core, removed_order }
}

/// (k−1)(n−k+2) + C(k−2, 2): every graph on `n` vertices with at least this
/// many edges has a subgraph of minimum degree at least `k`.
pub fn fact1_threshold(k: usize, n: usize) -> Result<u64> {
    if k < 2 {
        return Err(Error::Domain(format!("k must be at least 2, got {k}")));
    }
    if n + 1 < k {
        return Err(Error::Domain(format!("n = {n} is below k - 1 = {}", k - 1)));
    }
    let (k, n) = (k as u64, n as u64);
    let c = (k - 2) * (k - 2).saturating_sub(1) / 2;
    Ok((k - 1) * (n + 2 - k) + c)
}
