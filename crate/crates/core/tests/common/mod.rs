//! Instance builders and independent checks shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use degcore::generators::{gen_gnm, gen_near_threshold};
use degcore::goodsets::{grow_good_sets_with, ClosureOrder, GoodSetOutcome, GrowOptions};
use degcore::peel::peel_to_core;
use degcore::shadow::ShadowContext;
use degcore::strategy::{build_strategy, DeletionStrategy, StrategyOutcome};
use degcore::{Graph, VertexId, VertexSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Minimum degree of the subgraph induced by `set`, counted from the edge
/// list rather than through the adjacency helpers.
pub fn induced_min_degree(g: &Graph, set: &VertexSet) -> Option<usize> {
    if set.is_empty() {
        return None;
    }
    let mut deg = std::collections::BTreeMap::new();
    for v in set {
        deg.insert(v, 0usize);
    }
    for (u, v) in g.edges() {
        if set.contains(u) && set.contains(v) {
            *deg.get_mut(&u).unwrap() += 1;
            *deg.get_mut(&v).unwrap() += 1;
        }
    }
    deg.values().copied().min()
}

/// Edges with at least one endpoint in `x`, counted from the edge list.
pub fn boundary(g: &Graph, x: &VertexSet) -> usize {
    g.edges().filter(|&(u, v)| x.contains(u) || x.contains(v)).count()
}

/// The end-to-end instances: k = 3, t = 1, n in 10..=40, 2n − 1 + excess
/// edges with excess uniform in 0..=n/2.
pub fn end_to_end_instances(count: u64) -> Vec<(u64, Graph)> {
    (0..count)
        .map(|seed| {
            let mut r = rng(seed ^ 0x5eed);
            let n = r.gen_range(10..=40);
            let excess = r.gen_range(0..=n / 2);
            (seed, gen_near_threshold(n, 3, 1, excess, seed).unwrap())
        })
        .collect()
}

/// Largest component of the 3-core of a random graph near 2n edges, with
/// its maximal good sets grown without the size cap. None when there are
/// fewer than three good sets.
pub fn colouring_instance(seed: u64) -> Option<(Graph, Vec<VertexSet>)> {
    let n = 14 + (seed % 20) as usize;
    let g = gen_gnm(n, 2 * n - 1 + (seed % 5) as usize, seed).ok()?;
    let core = peel_to_core(&g, 3).core;
    let comp = core.components().into_iter().max_by_key(|c| c.len())?;
    let h = core.induced(&comp).ok()?;
    let opts = GrowOptions { order: ClosureOrder::Canonical, cap_check: false };
    match grow_good_sets_with(&h, 3, opts).ok()? {
        GoodSetOutcome::Family(f) if f.m() >= 3 => Some((h, f.members)),
        _ => None,
    }
}

/// Disjoint sets of degree-≥k vertices grown at random while the edge bound
/// ē(D) ≤ (k−1)|D| + 1 holds.
pub fn random_members(g: &Graph, k: usize, r: &mut ChaCha8Rng) -> Vec<VertexSet> {
    let mut used = vec![false; g.universe()];
    let mut members = Vec::new();
    let mut candidates: Vec<VertexId> = g.vertices().iter().copied().filter(|&v| g.degree(v) >= k).collect();
    candidates.shuffle(r);
    for v in candidates {
        if used[v as usize] || r.gen_bool(0.4) {
            continue;
        }
        let mut d = VertexSet::singleton(v);
        if boundary(g, &d) > (k - 1) + 1 {
            continue;
        }
        for _ in 0..r.gen_range(0..4) {
            let next = d
                .iter()
                .flat_map(|u| g.neighbors(u).iter().copied())
                .find(|&u| !d.contains(u) && !used[u as usize] && g.degree(u) >= k);
            let Some(u) = next else { break };
            let mut bigger = d.clone();
            bigger.insert(u);
            if boundary(g, &bigger) <= (k - 1) * bigger.len() + 1 {
                d = bigger;
            } else {
                break;
            }
        }
        if boundary(g, &d) <= (k - 1) * d.len() + 1 {
            for u in &d {
                used[u as usize] = true;
            }
            members.push(d);
        }
    }
    members
}

/// A random graph on at most 25 vertices with a valid collection.
pub fn shadow_instance(seed: u64) -> (Graph, Vec<VertexSet>, usize) {
    let mut r = rng(seed);
    let k = r.gen_range(2..=4);
    let n = r.gen_range(3..=25);
    let max_m = n * (n - 1) / 2;
    let m = r.gen_range(0..=((k - 1) * n + 2).min(max_m));
    let g = gen_gnm(n, m, seed).unwrap();
    let members = random_members(&g, k, &mut r);
    (g, members, k)
}

/// H without a min-degree-k subgraph, a collection on it, the strategy for
/// it, and a random admissible supergraph H̃.
pub struct StrategyPair {
    pub h: Graph,
    pub members: Vec<VertexSet>,
    pub k: usize,
    pub strategy: DeletionStrategy,
    pub target: Graph,
}

pub fn strategy_pair(seed: u64) -> Option<StrategyPair> {
    let mut r = rng(seed);
    let k = r.gen_range(2..=4);
    let n = r.gen_range(2..=18);
    let max_m = n * (n - 1) / 2;
    // half the draws sit at (k−1)n edges, where zero-deficiency shadows live
    let m = if r.gen_bool(0.5) { (k - 1) * n } else { r.gen_range(0..=(k - 1) * n) }.min(max_m);
    let h = gen_gnm(n, m, seed).unwrap();
    if !peel_to_core(&h, k).core.is_empty() {
        return None;
    }
    let members = random_members(&h, k, &mut r);
    let ctx = ShadowContext::new(&h, &members, k).ok()?;
    let strategy = match build_strategy(&ctx).ok()? {
        StrategyOutcome::Strategy(s) => s,
        StrategyOutcome::Witness(_) => return None,
    };

    // New vertices form a clique of size q > k; every vertex of S gets the
    // neighbours it is missing, and other non-member vertices get a few more
    // at random.
    let q = k + 1 + r.gen_range(0..3);
    let base = n as VertexId;
    let mut edges: Vec<(VertexId, VertexId)> = h.edges().collect();
    for a in 0..q as VertexId {
        for b in a + 1..q as VertexId {
            edges.push((base + a, base + b));
        }
    }
    let in_member = |v: VertexId| members.iter().any(|d| d.contains(v));
    for &v in h.vertices() {
        if in_member(v) {
            continue;
        }
        let mut extra: Vec<VertexId> = (0..q as VertexId).map(|a| base + a).collect();
        extra.shuffle(&mut r);
        let need = if strategy.s.contains(v) { k - h.degree(v) } else { 0 };
        let take = need.max(if r.gen_bool(0.3) { r.gen_range(0..=2) } else { 0 }).min(q);
        for &u in &extra[..take] {
            edges.push((v, u));
        }
    }
    let target = Graph::from_edges(n + q, edges).ok()?;
    strategy.check_admissible(&target).ok()?;
    Some(StrategyPair { h, members, k, strategy, target })
}

/// A graph of minimum degree ≥ k with at most n/(3k) vertices of degree k.
pub fn few_degree_k_instance(seed: u64, k: usize) -> Option<Graph> {
    let mut r = rng(seed);
    let n = r.gen_range(2 * k + 4..=40);
    let m = (n * (k + 1 + r.gen_range(0..k)) / 2).min(n * (n - 1) / 2);
    let g = gen_gnm(n, m, seed).ok()?;
    let core = peel_to_core(&g, k).core;
    if core.is_empty() || 3 * k * core.degree_exactly(k).len() > core.n() {
        return None;
    }
    Some(core)
}
