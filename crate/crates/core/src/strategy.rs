//! Deletion strategies.
//!
//! For a graph H with no subgraph of minimum degree k, a deletion strategy
//! records a set S of low-degree vertices and disjoint reservoirs B_v so
//! that, in any larger graph H̃ in which H sits as an induced subgraph and
//! whose low-degree vertices are among V_{≤k−1}(H) ∖ S, deleting parts of the
//! B_v leaves a graph of minimum degree at least k.
//!
//! The strategy is built by peeling shadows off H one layer at a time. Each
//! layer is tagged with the case it fell into:
//!
//! | tag | shadow        | deficiency |
//! |-----|---------------|------------|
//! | A1  | all of H      | positive   |
//! | A2  | all of H      | zero       |
//! | B1  | proper subset | positive   |
//! | B2  | proper subset | zero       |
//!
//! Building never proves that H lacks a min-degree-k subgraph. It finds out
//! lazily: if some residual graph has no vertex of degree below k, that
//! residual graph is returned as a witness instead.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::shadow::ShadowContext;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    A1,
    A2,
    B1,
    B2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BaseKind {
    SingletonBase,
    A1Base,
    A2Base,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub case: CaseTag,
    pub w: VertexId,
    /// Shadow of `w` in this layer's residual graph.
    pub y: VertexSet,
    /// Low-degree vertices of Y moved into S (A1 and B1 only).
    pub absorbed_low_degree: VertexSet,
    /// Indices into the root collection of members still present here.
    pub collection: Vec<usize>,
    pub deficiency: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeletionStrategy {
    pub layers: Vec<Layer>,
    pub s: VertexSet,
    pub b: BTreeMap<VertexId, VertexSet>,
    pub base_kind: BaseKind,
    graph: Graph,
    collection: Vec<VertexSet>,
    k: usize,
}

/// A non-empty induced subgraph of H with minimum degree at least k, found
/// while building a strategy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFound {
    pub witness: Graph,
    /// Number of layers peeled before the residual graph had no low vertex.
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategyOutcome {
    Strategy(DeletionStrategy),
    Witness(WitnessFound),
}

/// Σ_{s∈S} (k − deg_H(s)) against 2((k−1)v(H) − e(H)).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub spent: usize,
    pub bound: i64,
}

impl Budget {
    pub fn holds(&self) -> bool {
        self.spent as i64 <= self.bound
    }
}

pub fn build_strategy(ctx: &ShadowContext) -> Result<StrategyOutcome> {
    let h = ctx.graph();
    let k = ctx.k();
    let collection = ctx.collection();
    if h.is_empty() {
        return Err(Error::PreconditionViolated("cannot build a strategy for an empty graph".into()));
    }

    let mut cur = h.clone();
    let mut active: Vec<usize> = (0..collection.len()).collect();
    let mut layers = Vec::new();
    let mut s = VertexSet::new();
    let mut b = BTreeMap::new();

    let base_kind = loop {
        if cur.n() == 1 {
            s.insert(cur.vertices()[0]);
            break BaseKind::SingletonBase;
        }
        let low = cur.degree_at_most(k - 1);
        let Some(w) = low.first() else {
            return Ok(StrategyOutcome::Witness(WitnessFound { witness: cur, depth: layers.len() }));
        };
        let members: Vec<VertexSet> = active.iter().map(|&i| collection[i].clone()).collect();
        let record = ShadowContext::unchecked(&cur, &members, k).shadow(w)?;
        let deficiency = record.deficiency();
        let y = record.y;
        let whole = y.len() == cur.n();
        let strict = deficiency > 0;

        let absorbed_low_degree = if strict {
            y.iter().filter(|&v| cur.degree(v) < k).collect()
        } else {
            b.insert(w, y.clone());
            VertexSet::new()
        };
        s = s.union(&absorbed_low_degree);
        let case = match (whole, strict) {
            (true, true) => CaseTag::A1,
            (true, false) => CaseTag::A2,
            (false, true) => CaseTag::B1,
            (false, false) => CaseTag::B2,
        };
        layers.push(Layer { case, w, y: y.clone(), absorbed_low_degree, collection: active.clone(), deficiency });
        if whole {
            break if strict { BaseKind::A1Base } else { BaseKind::A2Base };
        }
        cur = cur.delete(&y)?;
        active.retain(|&i| collection[i].is_disjoint(&y));
    };

    Ok(StrategyOutcome::Strategy(DeletionStrategy {
        layers,
        s,
        b,
        base_kind,
        graph: h.clone(),
        collection: collection.to_vec(),
        k,
    }))
}

impl DeletionStrategy {
    /// The graph H the strategy was built for.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn collection(&self) -> &[VertexSet] {
        &self.collection
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn budget(&self) -> Budget {
        let k = self.k;
        let spent = self.s.iter().map(|v| k - self.graph.degree(v)).sum();
        let bound = 2 * ((k as i64 - 1) * self.graph.n() as i64 - self.graph.m() as i64);
        Budget { spent, bound }
    }

    /// Checks the three conditions under which the strategy may be replayed
    /// on `htilde`.
    pub fn check_admissible(&self, htilde: &Graph) -> Result<()> {
        let h = &self.graph;
        let k = self.k;
        if htilde.n() <= h.n() {
            return Err(Error::AdmissibilityViolated("H is not a proper subgraph of the target".into()));
        }
        for &v in h.vertices() {
            if !htilde.contains(v) {
                return Err(Error::AdmissibilityViolated(format!("vertex {v} of H is missing from the target")));
            }
            let inside = htilde.neighbors(v).iter().filter(|&&u| h.contains(u)).count();
            if inside != h.degree(v) || !h.neighbors(v).iter().all(|&u| htilde.has_edge(v, u)) {
                return Err(Error::AdmissibilityViolated(format!("H is not induced at vertex {v}")));
            }
        }
        for &v in htilde.vertices() {
            if htilde.degree(v) < k && (!h.contains(v) || h.degree(v) >= k || self.s.contains(v)) {
                return Err(Error::AdmissibilityViolated(format!(
                    "vertex {v} has degree {} in the target but is not a low-degree vertex of H outside S",
                    htilde.degree(v)
                )));
            }
        }
        for (i, d) in self.collection.iter().enumerate() {
            for v in d {
                if let Some(&u) = htilde.neighbors(v).iter().find(|&&u| !h.contains(u)) {
                    return Err(Error::AdmissibilityViolated(format!(
                        "new vertex {u} is adjacent to collection member {i}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Replays the strategy on an admissible supergraph, returning a
    /// non-empty induced subgraph of minimum degree at least k.
    pub fn apply(&self, htilde: &Graph) -> Result<Graph> {
        self.check_admissible(htilde)?;
        let k = self.k;
        let breach = |msg: String| Error::InternalInvariantBreach(msg);
        let mut cur = htilde.clone();

        for layer in &self.layers {
            if cur.degree_at_most(k - 1).is_empty() {
                return Ok(cur);
            }
            match layer.case {
                CaseTag::A1 => return Err(breach("low-degree vertex survives an A1 base".into())),
                CaseTag::B1 => continue,
                CaseTag::A2 | CaseTag::B2 => {
                    if cur.degree(layer.w) >= k {
                        if layer.case == CaseTag::A2 {
                            return Err(breach(format!("A2 base with {} not of low degree", layer.w)));
                        }
                        continue;
                    }
                    let members: Vec<VertexSet> =
                        layer.collection.iter().map(|&i| self.collection[i].clone()).collect();
                    let sh = ShadowContext::unchecked(&cur, &members, k).shadow(layer.w)?.y;
                    if !sh.is_subset(&layer.y) {
                        return Err(breach(format!("replayed shadow of {} leaves its reservoir", layer.w)));
                    }
                    cur = cur.delete(&sh)?;
                    if layer.case == CaseTag::A2 {
                        break;
                    }
                }
            }
        }

        match cur.min_degree() {
            Some(d) if d >= k => Ok(cur),
            Some(d) => Err(breach(format!("replay ended with minimum degree {d} < {k}"))),
            None => Err(breach("replay deleted every vertex".into())),
        }
    }

    /// Nested layer records for audit output.
    pub fn record(&self) -> StrategyRecord {
        let budget = self.budget();
        let mut inner: Option<Box<LayerRecord>> = None;
        for layer in self.layers.iter().rev() {
            inner = Some(Box::new(LayerRecord {
                case: layer.case,
                w: layer.w,
                shadow_size: layer.y.len(),
                absorbed_low_degree: layer.absorbed_low_degree.clone(),
                collection_size: layer.collection.len(),
                deficiency: layer.deficiency,
                inner,
            }));
        }
        StrategyRecord {
            k: self.k,
            n: self.graph.n(),
            m: self.graph.m(),
            base: self.base_kind,
            depth: self.layers.len(),
            s: self.s.clone(),
            reservoir_sizes: self.b.iter().map(|(&v, set)| (v, set.len())).collect(),
            budget_spent: budget.spent,
            budget_bound: budget.bound,
            layers: inner,
        }
    }
}

/// Free-function form of [`DeletionStrategy::apply`].
pub fn apply_strategy(strategy: &DeletionStrategy, htilde: &Graph) -> Result<Graph> {
    strategy.apply(htilde)
}

pub fn strategy_budget(strategy: &DeletionStrategy) -> Budget {
    strategy.budget()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrategyRecord {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub base: BaseKind,
    pub depth: usize,
    pub s: VertexSet,
    pub reservoir_sizes: BTreeMap<VertexId, usize>,
    pub budget_spent: usize,
    pub budget_bound: i64,
    pub layers: Option<Box<LayerRecord>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerRecord {
    pub case: CaseTag,
    pub w: VertexId,
    pub shadow_size: usize,
    pub absorbed_low_degree: VertexSet,
    pub collection_size: usize,
    pub deficiency: i64,
    pub inner: Option<Box<LayerRecord>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[VertexId]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn strategy(h: &Graph, coll: &[VertexSet], k: usize) -> DeletionStrategy {
        match build_strategy(&ShadowContext::new(h, coll, k).unwrap()).unwrap() {
            StrategyOutcome::Strategy(s) => s,
            StrategyOutcome::Witness(w) => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn singleton_base() {
        let h = Graph::from_edges(1, []).unwrap();
        let st = strategy(&h, &[], 3);
        assert_eq!(st.base_kind, BaseKind::SingletonBase);
        assert_eq!(st.s, set(&[0]));
        assert_eq!(st.budget(), Budget { spent: 3, bound: 4 });
    }

    #[test]
    fn singleton_replays_into_k4() {
        let h = Graph::from_edges(1, []).unwrap();
        let st = strategy(&h, &[], 3);
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(st.apply(&k4).unwrap(), k4);
    }

    #[test]
    fn pendant_triangle_gives_witness() {
        let h = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (1, 3)]).unwrap();
        match build_strategy(&ShadowContext::new(&h, &[], 2).unwrap()).unwrap() {
            StrategyOutcome::Witness(w) => {
                assert_eq!(w.witness.vertices(), &[1, 2, 3]);
                assert_eq!(w.depth, 1);
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn path_is_a1() {
        let h = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let st = strategy(&h, &[], 2);
        assert_eq!(st.base_kind, BaseKind::A1Base);
        assert_eq!(st.s, set(&[0, 2]));
        assert_eq!(st.budget(), Budget { spent: 2, bound: 2 });
        assert_eq!(st.layers.len(), 1);
        assert_eq!(st.layers[0].case, CaseTag::A1);
    }

    #[test]
    fn path_replay_keeps_target() {
        let h = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let st = strategy(&h, &[], 2);
        let target = Graph::from_edges(4, [(0, 1), (1, 2), (3, 0), (3, 1), (3, 2)]).unwrap();
        assert_eq!(st.apply(&target).unwrap(), target);
    }

    /// Triangle 1,2,3 held as one member, pendant 0 on vertex 1.
    fn member_triangle() -> (Graph, Vec<VertexSet>) {
        let h = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (1, 3)]).unwrap();
        (h, vec![set(&[1, 2, 3])])
    }

    #[test]
    fn a2_base_has_zero_budget() {
        let (h, coll) = member_triangle();
        let st = strategy(&h, &coll, 2);
        assert_eq!(st.base_kind, BaseKind::A2Base);
        assert!(st.s.is_empty());
        assert_eq!(st.b.get(&0), Some(&h.vertex_set()));
        assert_eq!(st.budget(), Budget { spent: 0, bound: 0 });
    }

    #[test]
    fn a2_replay_deletes_reservoir() {
        let (h, coll) = member_triangle();
        let st = strategy(&h, &coll, 2);
        let target = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]).unwrap();
        assert_eq!(st.apply(&target).unwrap().vertices(), &[4, 5, 6]);
    }

    #[test]
    fn inadmissible_targets_rejected() {
        let h = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let st = strategy(&h, &[], 2);
        assert!(matches!(st.apply(&h), Err(Error::AdmissibilityViolated(_))));
        // new vertex 3 touching only vertex 0 leaves vertex 2 of S low
        let t = Graph::from_edges(4, [(0, 1), (1, 2), (3, 0)]).unwrap();
        assert!(matches!(st.apply(&t), Err(Error::AdmissibilityViolated(_))));
    }

    #[test]
    fn record_nests_layers() {
        let h = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let rec = strategy(&h, &[], 2).record();
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains("\"case\":\"A1\""));
        assert_eq!(rec.depth, 1);
    }
}
