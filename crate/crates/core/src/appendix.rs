//! Shrinking a graph with few degree-k vertices.
//!
//! If H has minimum degree at least k and at most n/(3k) vertices of degree
//! exactly k, deleting a red vertex set built by a red/blue marking leaves a
//! subgraph of minimum degree k on at most (1 − 1/(27k²))n vertices.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppendixState {
    /// H after removing every edge between two vertices of degree ≥ k+2.
    pub trimmed: Graph,
    /// Deleted edges, in deletion order.
    pub trims: Vec<(VertexId, VertexId)>,
    /// Neighbours of degree-k vertices.
    pub t1: VertexSet,
    /// Vertices of degree at least 9k.
    pub t2: VertexSet,
    pub t: VertexSet,
    /// Red vertices in the order they were picked.
    pub red_order: Vec<VertexId>,
    pub red: VertexSet,
    pub blue: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShrinkOutcome {
    /// H minus the red vertices.
    pub graph: Graph,
    pub state: AppendixState,
}

/// Largest size the shrunk graph may have: ⌊(1 − 1/(27k²))n⌋.
pub fn shrink_bound(n: usize, k: usize) -> usize {
    let den = 27 * k * k;
    n - n.div_ceil(den)
}

pub fn shrink_few_degree_k(h: &Graph, k: usize) -> Result<Graph> {
    Ok(shrink_traced(h, k)?.graph)
}

pub fn shrink_traced(h: &Graph, k: usize) -> Result<ShrinkOutcome> {
    let n = h.n();
    match h.min_degree() {
        Some(d) if d >= k => {}
        Some(d) => return Err(Error::PreconditionViolated(format!("minimum degree {d} < {k}"))),
        None => return Err(Error::PreconditionViolated("empty graph".into())),
    }
    let vk = h.degree_exactly(k);
    if 3 * k * vk.len() > n {
        return Err(Error::PreconditionViolated(format!("{} vertices of degree {k} exceed n/(3k) for n = {n}", vk.len())));
    }

    // Degrees only fall, so an edge skipped once never becomes eligible and a
    // single pass matches repeatedly deleting the smallest eligible edge.
    let mut degree: Vec<usize> = (0..h.universe() as VertexId).map(|v| h.degree(v)).collect();
    let mut trims = Vec::new();
    let mut kept = Vec::new();
    for (u, v) in h.edges() {
        if degree[u as usize] >= k + 2 && degree[v as usize] >= k + 2 {
            degree[u as usize] -= 1;
            degree[v as usize] -= 1;
            trims.push((u, v));
        } else {
            kept.push((u, v));
        }
    }
    let trimmed = Graph::from_adjacency(h.universe(), &h.vertex_set(), &kept)?;
    if trimmed.degree_exactly(k) != vk {
        return Err(Error::InternalInvariantBreach("trimming changed the degree-k vertices".into()));
    }

    let t1: VertexSet = vk.iter().flat_map(|v| trimmed.neighbors(v).iter().copied()).collect();
    let t2: VertexSet = trimmed.vertices().iter().copied().filter(|&v| trimmed.degree(v) >= 9 * k).collect();
    let t = trimmed.vertex_set().difference(&t1.union(&t2));

    let mut red = VertexSet::new();
    let mut blue = VertexSet::new();
    let mut red_order = Vec::new();
    let coloured = |red: &VertexSet, blue: &VertexSet, v| red.contains(v) || blue.contains(v);
    while let Some(w) = t.iter().find(|&v| !coloured(&red, &blue, v)) {
        red.insert(w);
        red_order.push(w);
        for &v in trimmed.neighbors(w) {
            if red.contains(v) {
                continue;
            }
            let mut have = trimmed.neighbors(v).iter().filter(|&&u| blue.contains(u)).count();
            for &u in trimmed.neighbors(v) {
                if have >= k {
                    break;
                }
                if !coloured(&red, &blue, u) {
                    blue.insert(u);
                    have += 1;
                }
            }
            if have < k {
                return Err(Error::InternalInvariantBreach(format!("neighbour {v} of red {w} has only {have} blue neighbours")));
            }
        }
    }

    let graph = h.delete(&red)?;
    if graph.min_degree().map_or(true, |d| d < k) {
        return Err(Error::InternalInvariantBreach("deleting the red vertices broke the degree bound".into()));
    }
    Ok(ShrinkOutcome { graph, state: AppendixState { trimmed, trims, t1, t2, t, red_order, red, blue } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let edges = (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)));
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn k5_loses_one_vertex() {
        let out = shrink_traced(&complete(5), 3).unwrap();
        assert!(out.state.trims.is_empty());
        assert_eq!(out.state.t.len(), 5);
        assert_eq!(out.state.red_order, vec![0]);
        assert_eq!(out.graph.vertex_set(), (1..5).collect());
    }

    #[test]
    fn k6_trims_then_one_red() {
        let out = shrink_traced(&complete(6), 3).unwrap();
        assert_eq!(out.state.trims, vec![(0, 1), (2, 3), (4, 5)]);
        assert_eq!(out.state.red_order, vec![0]);
        assert_eq!(out.graph.n(), 5);
        assert_eq!(out.graph.min_degree(), Some(4));
        assert!(out.graph.n() <= shrink_bound(6, 3));
    }

    #[test]
    fn too_many_degree_k_vertices() {
        assert!(matches!(shrink_few_degree_k(&complete(4), 3), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn bound_values() {
        assert_eq!(shrink_bound(5, 3), 4);
        assert_eq!(shrink_bound(6, 3), 5);
        assert_eq!(shrink_bound(243, 3), 242);
        assert_eq!(shrink_bound(244, 3), 242);
    }
}
