//! Shadows of low-degree vertices.
//!
//! Given a graph H, a collection of disjoint vertex sets in H and a vertex w
//! of degree at most k−1, the shadow of w is the smallest set Y containing w
//! such that
//!
//! * no collection member is split by Y,
//! * every vertex outside Y with a neighbour in Y keeps at least k neighbours
//!   outside Y,
//! * every collection member adjacent to Y lies inside Y.
//!
//! It is computed by growing Y from {w}: a vertex outside all members joins
//! when its degree in H − Y drops below k, and a whole member joins as soon
//! as it touches Y. The quantity (k−1)|Y| − ē_H(Y), the deficiency, never
//! decreases along the way.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, Debug)]
pub struct ShadowContext<'a> {
    graph: &'a Graph,
    collection: &'a [VertexSet],
    k: usize,
    member_of: Vec<Option<usize>>,
}

impl<'a> ShadowContext<'a> {
    /// Checks that members are non-empty, pairwise disjoint vertex sets of H
    /// whose vertices have degree at least k and that satisfy
    /// ē_H(D) ≤ (k−1)|D| + 1.
    pub fn new(graph: &'a Graph, collection: &'a [VertexSet], k: usize) -> Result<Self> {
        let ctx = Self::unchecked(graph, collection, k);
        let mut seen = vec![false; graph.universe()];
        for (i, d) in collection.iter().enumerate() {
            if d.is_empty() {
                return Err(Error::PreconditionViolated(format!("collection member {i} is empty")));
            }
            for v in d {
                if !graph.contains(v) {
                    return Err(Error::UnknownVertex(v));
                }
                if std::mem::replace(&mut seen[v as usize], true) {
                    return Err(Error::PreconditionViolated(format!("vertex {v} lies in two collection members")));
                }
                if graph.degree(v) < k {
                    return Err(Error::PreconditionViolated(format!(
                        "member {i} contains vertex {v} of degree {} < {k}",
                        graph.degree(v)
                    )));
                }
            }
            let boundary = graph.boundary_edge_count(d)?;
            if boundary > (k - 1) * d.len() + 1 {
                return Err(Error::PreconditionViolated(format!(
                    "member {i} has {boundary} incident edges, more than {}",
                    (k - 1) * d.len() + 1
                )));
            }
        }
        Ok(ctx)
    }

    pub(crate) fn unchecked(graph: &'a Graph, collection: &'a [VertexSet], k: usize) -> Self {
        let mut member_of = vec![None; graph.universe()];
        for (i, d) in collection.iter().enumerate() {
            for v in d {
                if (v as usize) < member_of.len() {
                    member_of[v as usize] = Some(i);
                }
            }
        }
        ShadowContext { graph, collection, k, member_of }
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn collection(&self) -> &'a [VertexSet] {
        self.collection
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn member_of(&self, v: VertexId) -> Option<usize> {
        self.member_of.get(v as usize).copied().flatten()
    }

    /// sh_H(w) under the canonical step order.
    pub fn shadow(&self, w: VertexId) -> Result<ShadowRecord> {
        self.shadow_ordered(w, StepOrder::Canonical)
    }

    pub fn shadow_ordered(&self, w: VertexId, order: StepOrder) -> Result<ShadowRecord> {
        let h = self.graph;
        if !h.contains(w) {
            return Err(Error::UnknownVertex(w));
        }
        if h.degree(w) >= self.k {
            return Err(Error::PreconditionViolated(format!(
                "vertex {w} has degree {} >= k = {}",
                h.degree(w),
                self.k
            )));
        }
        let mut grow = Grower {
            ctx: self,
            in_y: vec![false; h.universe()],
            residual: (0..h.universe() as VertexId).map(|v| h.degree(v)).collect(),
            vertex_queue: BTreeSet::new(),
            member_queue: BTreeSet::new(),
            member_done: vec![false; self.collection.len()],
            size: 0,
            boundary: 0,
        };
        grow.add(w);
        let mut record = ShadowRecord {
            w,
            y: VertexSet::new(),
            trace: Vec::new(),
            deficiency_history: vec![grow.deficiency()],
        };

        loop {
            let next_vertex = match order {
                StepOrder::Canonical => grow.vertex_queue.pop_first(),
                StepOrder::Reverse => grow.vertex_queue.pop_last(),
            };
            if let Some(v) = next_vertex {
                grow.add(v);
                record.trace.push(ShadowStep::AddVertex(v));
            } else {
                let next_member = match order {
                    StepOrder::Canonical => grow.member_queue.pop_first(),
                    StepOrder::Reverse => grow.member_queue.pop_last(),
                };
                let Some(i) = next_member else { break };
                grow.member_done[i] = true;
                for v in &self.collection[i] {
                    grow.add(v);
                }
                record.trace.push(ShadowStep::AddSet(i));
            }
            record.deficiency_history.push(grow.deficiency());
        }

        record.y = h.vertices().iter().copied().filter(|&v| grow.in_y[v as usize]).collect();
        Ok(record)
    }
}

/// Which applicable step the shadow procedure takes first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOrder {
    /// Lowest eligible vertex, else lowest-index member.
    Canonical,
    /// Highest eligible vertex, else highest-index member.
    Reverse,
}

struct Grower<'c, 'a> {
    ctx: &'c ShadowContext<'a>,
    in_y: Vec<bool>,
    /// deg_{H−Y}(v) for every v.
    residual: Vec<usize>,
    vertex_queue: BTreeSet<VertexId>,
    member_queue: BTreeSet<usize>,
    member_done: Vec<bool>,
    size: usize,
    boundary: usize,
}

impl Grower<'_, '_> {
    fn add(&mut self, x: VertexId) {
        let h = self.ctx.graph;
        self.in_y[x as usize] = true;
        self.size += 1;
        self.boundary += self.residual[x as usize];
        self.vertex_queue.remove(&x);
        for &u in h.neighbors(x) {
            self.residual[u as usize] -= 1;
            if self.in_y[u as usize] {
                continue;
            }
            match self.ctx.member_of(u) {
                Some(i) if !self.member_done[i] => {
                    self.member_queue.insert(i);
                }
                Some(_) => {}
                None if self.residual[u as usize] < self.ctx.k => {
                    self.vertex_queue.insert(u);
                }
                None => {}
            }
        }
    }

    fn deficiency(&self) -> i64 {
        ((self.ctx.k - 1) * self.size) as i64 - self.boundary as i64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ShadowStep {
    AddVertex(VertexId),
    /// A whole collection member, by index.
    AddSet(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowRecord {
    pub w: VertexId,
    pub y: VertexSet,
    /// Steps after the initial Y = {w}.
    pub trace: Vec<ShadowStep>,
    /// Deficiency of {w}, then after each step.
    pub deficiency_history: Vec<i64>,
}

impl ShadowRecord {
    pub fn deficiency(&self) -> i64 {
        *self.deficiency_history.last().expect("history starts with {w}")
    }
}

/// (k−1)|Y| − ē_H(Y).
pub fn shadow_deficiency(h: &Graph, y: &VertexSet, k: usize) -> Result<i64> {
    let boundary = h.boundary_edge_count(y)?;
    Ok(((k - 1) * y.len()) as i64 - boundary as i64)
}

/// Σ (k − deg_H(s)) over the vertices s ∈ Y of degree at most k−1.
pub fn low_degree_weight(h: &Graph, y: &VertexSet, k: usize) -> usize {
    y.iter().map(|s| h.degree(s)).filter(|&d| d < k).map(|d| k - d).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureViolation {
    /// w ∉ Y.
    MissingRoot,
    /// A member meets Y without lying inside it.
    SplitMember { member: usize },
    /// A vertex outside Y with a neighbour in Y has too few neighbours outside.
    LowOutsideNeighbour { vertex: VertexId, degree: usize },
    /// A member outside Y is adjacent to Y.
    AdjacentMember { member: usize },
}

impl ClosureViolation {
    /// Roman numeral of the closure property that failed.
    pub fn property(&self) -> &'static str {
        match self {
            ClosureViolation::MissingRoot => "I",
            ClosureViolation::SplitMember { .. } => "II",
            ClosureViolation::LowOutsideNeighbour { .. } => "III",
            ClosureViolation::AdjacentMember { .. } => "IV",
        }
    }
}

/// Checks the four closure properties of Y literally, returning the first
/// failure.
pub fn verify_shadow_closure(ctx: &ShadowContext, y: &VertexSet, w: VertexId) -> std::result::Result<(), ClosureViolation> {
    let h = ctx.graph();
    if !y.contains(w) {
        return Err(ClosureViolation::MissingRoot);
    }
    for (i, d) in ctx.collection().iter().enumerate() {
        if !d.is_disjoint(y) && !d.is_subset(y) {
            return Err(ClosureViolation::SplitMember { member: i });
        }
    }
    for &v in h.vertices() {
        if y.contains(v) || !h.neighbors(v).iter().any(|&u| y.contains(u)) {
            continue;
        }
        let degree = h.neighbors(v).iter().filter(|&&u| !y.contains(u)).count();
        if degree < ctx.k() {
            return Err(ClosureViolation::LowOutsideNeighbour { vertex: v, degree });
        }
    }
    for (i, d) in ctx.collection().iter().enumerate() {
        if d.is_disjoint(y) && d.iter().any(|v| h.neighbors(v).iter().any(|&u| y.contains(u))) {
            return Err(ClosureViolation::AdjacentMember { member: i });
        }
    }
    Ok(())
}
