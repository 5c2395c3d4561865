//! The extraction pipeline.
//!
//! Given G with n vertices and at least (k−1)n − t edges, [`extract`] finds an
//! induced subgraph of minimum degree at least k on at most ⌊(1−ε)n⌋
//! vertices, where ε = 1/max(10⁴k², 100kt). Each level either finishes with
//! one of the escapes below or shrinks the graph and goes round again.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::appendix::shrink_traced;
use crate::buckets::DyadicBuckets;
use crate::certificate::{Certificate, ConfigEcho, GraphEcho, FORMAT};
use crate::colouring::{Colouring, ColouringState, StepOutcome};
use crate::edgelist::content_hash;
use crate::error::{Error, Result};
use crate::goodsets::{grow_good_sets, remove_and_peel, GoodSetEscape, GoodSetOutcome, Remainder};
use crate::graph::{Graph, VertexSet};
use crate::peel::peel_to_core;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionConfig {
    pub k: usize,
    pub t: usize,
}

impl ExtractionConfig {
    pub fn new(k: usize, t: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidConfig(format!("t-range empty for k={k}")));
        }
        let max = Self::max_t(k);
        if !(1..=max).contains(&t) {
            return Err(Error::InvalidConfig(format!("t={t} outside 1..={max} for k={k}")));
        }
        Ok(ExtractionConfig { k, t })
    }

    /// Largest admissible t, (k−2)(k+1)/2 − 1.
    pub fn max_t(k: usize) -> usize {
        ((k - 2) * (k + 1) / 2).saturating_sub(1)
    }

    /// 1/ε = max(10⁴k², 100kt).
    pub fn epsilon_denominator(&self) -> u64 {
        let (k, t) = (self.k as u64, self.t as u64);
        (10_000 * k * k).max(100 * k * t)
    }

    pub fn epsilon(&self) -> String {
        format!("1/{}", self.epsilon_denominator())
    }

    /// ⌊(1−ε)n⌋.
    pub fn size_bound(&self, n: usize) -> usize {
        let den = self.epsilon_denominator();
        n - (n as u64).div_ceil(den) as usize
    }

    /// (k−1)n − t, the edge count the input must reach.
    pub fn edge_requirement(&self, n: usize) -> i64 {
        (self.k as i64 - 1) * n as i64 - self.t as i64
    }
}

/// How the witness was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    Disconnected,
    FewDegreeK,
    SparseCut,
    OversizeGoodSet,
    SingleBigGoodSet,
    SmallJPrimeEscape,
    ColouringComplete,
    RecursiveDescent,
    StrategyWitness,
}

impl Branch {
    pub const ALL: [Branch; 9] = [
        Branch::Disconnected,
        Branch::FewDegreeK,
        Branch::SparseCut,
        Branch::OversizeGoodSet,
        Branch::SingleBigGoodSet,
        Branch::SmallJPrimeEscape,
        Branch::ColouringComplete,
        Branch::RecursiveDescent,
        Branch::StrategyWitness,
    ];
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn extract(g: &Graph, cfg: &ExtractionConfig) -> Result<Certificate> {
    extract_observed(g, cfg, |_, _, _| {})
}

/// Like [`extract`], calling `observe` with the level graph, its buckets and
/// every colouring state the induction passes through (the initial one
/// included).
pub fn extract_observed<F>(g: &Graph, cfg: &ExtractionConfig, mut observe: F) -> Result<Certificate>
where
    F: FnMut(&Graph, &DyadicBuckets, &ColouringState),
{
    let k = cfg.k;
    let n0 = g.n();
    if n0 + 1 < k || g.is_empty() {
        return Err(Error::PreconditionViolated(format!("n = {n0} is below k - 1 = {}", k - 1)));
    }
    let need = cfg.edge_requirement(n0);
    if (g.m() as i64) < need {
        return Err(Error::InsufficientEdges { have: g.m(), need: need.max(0) as usize });
    }
    let bound = cfg.size_bound(n0);
    let mut log = Vec::new();
    let mut cur = g.clone();
    let mut level = 0usize;

    let (branch, witness) = loop {
        log.push(format!("level {level} n={} m={}", cur.n(), cur.m()));
        if (cur.m() as i64) < cfg.edge_requirement(cur.n()) {
            return Err(Error::InternalInvariantBreach(format!("edge budget lost at level {level}")));
        }

        let peeled = peel_to_core(&cur, k);
        if !peeled.removed_order.is_empty() {
            log.push(format!("peel removed={}", peeled.removed_order.len()));
            cur = peeled.core;
            if cur.is_empty() {
                return Err(Error::InternalInvariantBreach("peeling emptied the graph".into()));
            }
            if cur.n() <= bound {
                break (Branch::RecursiveDescent, cur.vertex_set());
            }
            level += 1;
            continue;
        }

        let components = cur.components();
        if components.len() > 1 {
            let smallest = components.iter().min_by_key(|c| c.len()).expect("at least two components").clone();
            log.push(format!("components={} smallest={}", components.len(), smallest.len()));
            break (Branch::Disconnected, smallest);
        }

        let n = cur.n();
        let degree_k = cur.degree_exactly(k).len();
        log.push(format!("degree_k={degree_k}"));
        if 3 * k * degree_k <= n {
            let out = shrink_traced(&cur, k)?;
            log.push(format!("shrink trims={} red={}", out.state.trims.len(), out.state.red.len()));
            break (Branch::FewDegreeK, out.graph.vertex_set());
        }

        let family = match grow_good_sets(&cur, k)? {
            GoodSetOutcome::Family(f) => f,
            GoodSetOutcome::Escape(GoodSetEscape::SparseCut { witness_set, .. }) => {
                log.push(format!("sparse_cut {witness_set}"));
                cur = cur.delete(&witness_set)?;
                level += 1;
                if cur.n() <= bound && cur.min_degree().is_some_and(|d| d >= k) {
                    break (Branch::SparseCut, cur.vertex_set());
                }
                continue;
            }
            GoodSetOutcome::Escape(GoodSetEscape::OversizeGoodSet { witness_set, .. }) => {
                log.push(format!("oversize good set size={}", witness_set.len()));
                match remove_and_peel(&cur, &witness_set, k)? {
                    Remainder::Core(core) => break (Branch::OversizeGoodSet, core.vertex_set()),
                    Remainder::EmptyCore => {
                        return Err(Error::InternalInvariantBreach("oversize good set left an empty core".into()))
                    }
                }
            }
        };
        log.push(format!("good_sets m={} total={}", family.m(), family.total_size()));

        let buckets = DyadicBuckets::partition(&family.members, n, k)?;
        log.push(format!("buckets J={} J'={}", buckets.j(), buckets.j_prime()));
        let d1 = &buckets.members()[0];
        if buckets.j_prime() == 1 {
            break (Branch::SingleBigGoodSet, cur.vertex_set().difference(d1));
        }
        if 1usize.checked_shl(buckets.j_prime() as u32).is_some_and(|p| p <= cfg.t) {
            break (Branch::SmallJPrimeEscape, cur.vertex_set().difference(d1));
        }

        let colouring = Colouring::new(&cur, &buckets, k);
        let mut state = colouring.init_state();
        observe(&cur, &buckets, &state);
        let mut found = None;
        while state.ell < buckets.j() {
            match colouring.assemble_step(&state)? {
                StepOutcome::Advanced { state: next, audit } => {
                    log.push(audit.to_string());
                    state = next;
                    observe(&cur, &buckets, &state);
                }
                StepOutcome::Witness { witness, audit } => {
                    log.push(audit.to_string());
                    log.push(format!("strategy witness depth={} size={}", witness.depth, witness.witness.n()));
                    found = Some(witness.witness.vertex_set());
                    break;
                }
            }
        }
        if let Some(w) = found {
            break (Branch::StrategyWitness, w);
        }
        let (colour, class) = finalize(&state, n, k)?;
        log.push(format!("finalize colour={colour} class={} coloured={}", class.len(), state.coloured_count()));
        break (Branch::ColouringComplete, cur.vertex_set().difference(&class));
    };

    let sub = g.induced(&witness)?;
    match sub.min_degree() {
        Some(d) if d >= k => {}
        _ => return Err(Error::InternalInvariantBreach(format!("{branch} witness fails the degree bound"))),
    }
    if witness.len() > bound {
        return Err(Error::InternalInvariantBreach(format!("{branch} witness has {} > {bound} vertices", witness.len())));
    }
    log.push(format!("branch={branch} size={}", witness.len()));

    Ok(Certificate {
        format: FORMAT.to_string(),
        config: ConfigEcho { k, t: cfg.t, epsilon: cfg.epsilon() },
        graph: GraphEcho { n: n0, m: g.m(), sha256: content_hash(g) },
        branch,
        witness_size: witness.len(),
        witness,
        size_bound: bound,
        size_bound_exact: format!("(1-{})*{n0}", cfg.epsilon()),
        replay_log: log,
    })
}

/// Picks the largest colour class of a J-appropriate colouring, smallest
/// colour on ties.
pub fn finalize(state: &ColouringState, n: usize, k: usize) -> Result<(u32, VertexSet)> {
    let total = state.coloured_count();
    if 20 * k * total < n {
        return Err(Error::InternalInvariantBreach(format!("only {total} vertices coloured, need n/(20k) for n = {n}")));
    }
    let classes = state.classes();
    let best = classes.values().map(VertexSet::len).max().unwrap_or(0);
    classes
        .into_iter()
        .find(|(_, c)| c.len() == best)
        .ok_or_else(|| Error::InternalInvariantBreach("no colour classes".into()))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;

    fn complete(n: u32) -> Graph {
        Graph::from_edges(n as usize, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn config_checks() {
        assert_eq!(ExtractionConfig::new(2, 1).unwrap_err().to_string(), "t-range empty for k=2");
        assert!(ExtractionConfig::new(3, 2).is_err());
        assert_eq!(ExtractionConfig::max_t(4), 4);
        let cfg = ExtractionConfig::new(3, 1).unwrap();
        assert_eq!(cfg.epsilon(), "1/90000");
        assert_eq!(cfg.size_bound(5), 4);
        assert_eq!(cfg.size_bound(90000), 89999);
        assert_eq!(cfg.size_bound(90001), 89999);
    }

    #[test]
    fn k5_goes_through_the_shrink() {
        let cert = extract(&complete(5), &ExtractionConfig::new(3, 1).unwrap()).unwrap();
        assert_eq!(cert.branch, Branch::FewDegreeK);
        assert_eq!(cert.witness, (1..5).collect());
    }

    #[test]
    fn two_k4_with_matching() {
        let mut e: Vec<(u32, u32)> = Vec::new();
        for base in [0, 4] {
            for u in 0..4 {
                for v in u + 1..4 {
                    e.push((base + u, base + v));
                }
            }
        }
        e.extend([(0, 4), (1, 5), (2, 6)]);
        let g = Graph::from_edges(8, e).unwrap();
        let cert = extract(&g, &ExtractionConfig::new(3, 1).unwrap()).unwrap();
        assert_eq!(cert.branch, Branch::SingleBigGoodSet);
        assert_eq!(cert.witness_size, 7);
    }

    #[test]
    fn wheel_lacks_edges() {
        let mut e = vec![];
        for i in 1..7u32 {
            e.push((0, i));
            e.push((i, if i == 6 { 1 } else { i + 1 }));
        }
        let g = Graph::from_edges(7, e).unwrap();
        let err = extract(&g, &ExtractionConfig::new(3, 1).unwrap()).unwrap_err();
        assert_eq!(err.to_string(), "insufficient edges: 12 < 13");
    }

    #[test]
    fn finalize_tie_goes_to_smaller_colour() {
        let state = ColouringState {
            ell: 2,
            assignment: BTreeMap::from([(0, 5), (1, 5), (2, 3), (3, 3)]),
            palette_size: 1203,
        };
        assert_eq!(finalize(&state, 10, 3).unwrap(), (3, [2, 3].into_iter().collect()));
        assert!(finalize(&state, 1000, 3).is_err());
    }
}
