//! Immutable simple undirected graphs.
//!
//! Vertex ids are assigned densely at load time and never renumbered, so a
//! vertex keeps its id in every graph derived from the input by deletion.
//! Every derived graph remembers the size of the id universe it came from,
//! which keeps per-vertex scratch arrays plain `Vec`s indexed by id.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = u32;

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<VertexId>", into = "Vec<VertexId>")]
pub struct VertexSet {
    members: Vec<VertexId>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: VertexId) -> Self {
        VertexSet { members: vec![v] }
    }

    /// Builds a set from an already sorted, duplicate-free vector.
    pub(crate) fn from_sorted(members: Vec<VertexId>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.members
    }

    pub fn first(&self) -> Option<VertexId> {
        self.members.first().copied()
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        match self.members.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.members.insert(pos, v);
                true
            }
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let (a, b) = (&self.members, &other.members);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        VertexSet { members: out }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| other.contains(v)).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.iter().all(|v| !large.contains(v))
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut members: Vec<VertexId> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }
}

impl From<Vec<VertexId>> for VertexSet {
    fn from(v: Vec<VertexId>) -> Self {
        v.into_iter().collect()
    }
}

impl From<VertexSet> for Vec<VertexId> {
    fn from(s: VertexSet) -> Self {
        s.members
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = VertexId;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, VertexId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter().copied()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// An immutable simple undirected graph over a subset of an id universe.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    present: Vec<bool>,
    vertices: Vec<VertexId>,
    adj: Vec<Vec<VertexId>>,
    edge_count: usize,
}

impl Graph {
    /// The graph with no vertices.
    pub fn empty() -> Self {
        Graph { present: Vec::new(), vertices: Vec::new(), adj: Vec::new(), edge_count: 0 }
    }

    /// Builds a graph on vertices `0..n`. Self-loops, repeated edges and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(Error::UnknownVertex(x));
                }
            }
            if u == v {
                return Err(Error::Domain(format!("self-loop at vertex {u}")));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
            edge_count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Domain(format!("repeated edge {} {}", u, w[0])));
            }
        }
        Ok(Graph {
            present: vec![true; n],
            vertices: (0..n as VertexId).collect(),
            adj,
            edge_count,
        })
    }

    /// Number of vertices, v(G).
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges, e(G).
    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// One past the largest id this graph can hold.
    pub fn universe(&self) -> usize {
        self.present.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_sorted(self.vertices.clone())
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.present.get(v as usize).copied().unwrap_or(false)
    }

    /// Degree of `v`; zero for ids outside the graph.
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(v as usize).map_or(0, Vec::len)
    }

    /// Sorted neighbour list of `v`; empty for ids outside the graph.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.adj.get(v as usize).map_or(&[], Vec::as_slice)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.vertices.iter().map(|&v| self.degree(v)).min()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices
            .iter()
            .flat_map(move |&u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    fn check_members(&self, x: &VertexSet) -> Result<()> {
        match x.iter().find(|&v| !self.contains(v)) {
            Some(v) => Err(Error::UnknownVertex(v)),
            None => Ok(()),
        }
    }

    /// The induced subgraph G − X. Surviving vertices keep their ids.
    pub fn delete(&self, x: &VertexSet) -> Result<Graph> {
        self.check_members(x)?;
        let mut keep = self.present.clone();
        for v in x {
            keep[v as usize] = false;
        }
        Ok(self.restrict(keep))
    }

    /// The subgraph induced on `keep`.
    pub fn induced(&self, keep: &VertexSet) -> Result<Graph> {
        self.check_members(keep)?;
        let mut mask = vec![false; self.universe()];
        for v in keep {
            mask[v as usize] = true;
        }
        Ok(self.restrict(mask))
    }

    fn restrict(&self, keep: Vec<bool>) -> Graph {
        let mut adj = vec![Vec::new(); self.universe()];
        let mut degree_sum = 0;
        let mut vertices = Vec::new();
        for &v in &self.vertices {
            if keep[v as usize] {
                vertices.push(v);
                let list: Vec<VertexId> =
                    self.adj[v as usize].iter().copied().filter(|&u| keep[u as usize]).collect();
                degree_sum += list.len();
                adj[v as usize] = list;
            }
        }
        Graph { present: keep, vertices, adj, edge_count: degree_sum / 2 }
    }

    /// Builds a graph from explicit parts. Used by constructions that add
    /// vertices to an existing graph.
    pub fn from_adjacency(universe: usize, vertices: &VertexSet, edges: &[(VertexId, VertexId)]) -> Result<Graph> {
        let full = Graph::from_edges(universe, edges.iter().copied())?;
        for &(u, v) in edges {
            for x in [u, v] {
                if !vertices.contains(x) {
                    return Err(Error::UnknownVertex(x));
                }
            }
        }
        full.induced(vertices)
    }

    /// ē_G(X): the number of edges with at least one endpoint in X.
    pub fn boundary_edge_count(&self, x: &VertexSet) -> Result<usize> {
        self.check_members(x)?;
        let mut total = 0;
        for v in x {
            for &u in self.neighbors(v) {
                // edges inside X are seen from both ends
                if !x.contains(u) || u > v {
                    total += 1;
                }
            }
        }
        Ok(total)
    }

    /// V_{≤i}(G), the vertices of degree at most `i`.
    pub fn degree_at_most(&self, i: usize) -> VertexSet {
        VertexSet::from_sorted(self.vertices.iter().copied().filter(|&v| self.degree(v) <= i).collect())
    }

    /// V_i(G), the vertices of degree exactly `i`.
    pub fn degree_exactly(&self, i: usize) -> VertexSet {
        VertexSet::from_sorted(self.vertices.iter().copied().filter(|&v| self.degree(v) == i).collect())
    }

    /// Both degree classes for threshold `i`.
    pub fn degree_classes(&self, i: usize) -> DegreeClasses {
        DegreeClasses { at_most: self.degree_at_most(i), exactly: self.degree_exactly(i) }
    }

    pub fn degree_view(&self) -> DegreeView {
        DegreeView::new(self)
    }

    /// Connected components, each as a vertex set, ordered by smallest id.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.universe()];
        let mut out = Vec::new();
        for &start in &self.vertices {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &u in self.neighbors(v) {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        stack.push(u);
                    }
                }
            }
            out.push(comp.into_iter().collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// The pair V_{≤i}(G), V_i(G) for one threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeClasses {
    pub at_most: VertexSet,
    pub exactly: VertexSet,
}

/// All degree classes of a graph at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeView {
    exactly: BTreeMap<usize, VertexSet>,
}

impl DegreeView {
    pub fn new(g: &Graph) -> Self {
        let mut buckets: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for &v in g.vertices() {
            buckets.entry(g.degree(v)).or_default().push(v);
        }
        DegreeView { exactly: buckets.into_iter().map(|(d, vs)| (d, VertexSet::from_sorted(vs))).collect() }
    }

    pub fn exactly(&self, i: usize) -> VertexSet {
        self.exactly.get(&i).cloned().unwrap_or_default()
    }

    pub fn at_most(&self, i: usize) -> VertexSet {
        self.exactly.range(..=i).flat_map(|(_, s)| s.iter()).collect()
    }

    pub fn at_least(&self, i: usize) -> VertexSet {
        self.exactly.range(i..).flat_map(|(_, s)| s.iter()).collect()
    }
}
