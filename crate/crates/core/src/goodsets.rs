//! Maximal good sets.
//!
//! A good set is grown from a degree-k seed by absorbing vertices that would
//! be left with fewer than k neighbours outside the set, and by merging with
//! overlapping or adjacent good sets. The closure below runs those rules to a
//! fixpoint and returns the maximal good sets, or stops early with one of two
//! escapes that already describe a small min-degree-k subgraph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::peel::peel_to_core;

/// One rule application in the history of a good set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum TraceStep {
    /// Rule 1: a degree-k vertex on its own.
    Seed { vertex: VertexId },
    /// Rule 2: `vertex` had at most k−1 neighbours outside `set`.
    Absorb { set: VertexSet, vertex: VertexId, result: VertexSet },
    /// Rule 3: two good sets sharing a vertex.
    Overlap { left: VertexSet, right: VertexSet, result: VertexSet },
    /// Rule 4: two good sets joined by an edge.
    Adjacent { left: VertexSet, right: VertexSet, result: VertexSet },
}

impl TraceStep {
    pub fn rule(&self) -> u8 {
        match self {
            TraceStep::Seed { .. } => 1,
            TraceStep::Absorb { .. } => 2,
            TraceStep::Overlap { .. } => 3,
            TraceStep::Adjacent { .. } => 4,
        }
    }

    pub fn result(&self) -> VertexSet {
        match self {
            TraceStep::Seed { vertex } => VertexSet::singleton(*vertex),
            TraceStep::Absorb { result, .. }
            | TraceStep::Overlap { result, .. }
            | TraceStep::Adjacent { result, .. } => result.clone(),
        }
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceStep::Seed { vertex } => write!(f, "rule1 {vertex} -> {{{vertex}}}"),
            TraceStep::Absorb { set, vertex, result } => write!(f, "rule2 {set} {vertex} -> {result}"),
            TraceStep::Overlap { left, right, result } => write!(f, "rule3 {left} {right} -> {result}"),
            TraceStep::Adjacent { left, right, result } => write!(f, "rule4 {left} {right} -> {result}"),
        }
    }
}

/// The maximal good sets D₁, …, D_m sorted by size (largest first, ties by
/// smallest vertex), each with the rule applications that built it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodFamily {
    pub members: Vec<VertexSet>,
    pub traces: Vec<Vec<TraceStep>>,
}

impl GoodFamily {
    pub fn m(&self) -> usize {
        self.members.len()
    }

    /// ‖C*‖, the total number of vertices covered.
    pub fn total_size(&self) -> usize {
        self.members.iter().map(VertexSet::len).sum()
    }

    /// Trace lines for all members, in member order.
    pub fn trace_lines(&self) -> Vec<String> {
        self.traces.iter().flatten().map(ToString::to_string).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoodSetEscape {
    /// Two good sets met in X with ē(X) ≤ (k−1)|X|, so G − X keeps enough
    /// edges for the induction.
    SparseCut { witness_set: VertexSet, left: VertexSet, right: VertexSet },
    /// A good set outgrew n/k. `witness_set` is the larger operand of the
    /// step that overflowed, so n/(2k) ≤ |D′| ≤ n/k.
    OversizeGoodSet { witness_set: VertexSet, witness_trace: Vec<TraceStep>, grown: VertexSet },
}

impl GoodSetEscape {
    pub fn witness_set(&self) -> &VertexSet {
        match self {
            GoodSetEscape::SparseCut { witness_set, .. } | GoodSetEscape::OversizeGoodSet { witness_set, .. } => {
                witness_set
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoodSetOutcome {
    Family(GoodFamily),
    Escape(GoodSetEscape),
}

/// Order in which applicable rules fire.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureOrder {
    /// Absorptions before merges; lowest set index, then lowest vertex id,
    /// then the lexicographically smallest adjacent pair.
    Canonical,
    /// Uniformly random choice among applicable rules.
    Seeded(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrowOptions {
    pub order: ClosureOrder,
    /// Stop with `OversizeGoodSet` once a set exceeds n/k.
    pub cap_check: bool,
}

impl Default for GrowOptions {
    fn default() -> Self {
        GrowOptions { order: ClosureOrder::Canonical, cap_check: true }
    }
}

/// Runs the closure under the canonical order with the size cap enabled.
pub fn grow_good_sets(g: &Graph, k: usize) -> Result<GoodSetOutcome> {
    grow_good_sets_with(g, k, GrowOptions::default())
}

pub fn grow_good_sets_with(g: &Graph, k: usize, opts: GrowOptions) -> Result<GoodSetOutcome> {
    match g.min_degree() {
        Some(d) if d >= k => {}
        Some(d) => return Err(Error::PreconditionViolated(format!("minimum degree {d} is below k = {k}"))),
        None => return Err(Error::PreconditionViolated("graph is empty".into())),
    }
    let mut closure = Closure::new(g, k, opts.cap_check);
    let escape = match opts.order {
        ClosureOrder::Canonical => closure.run_canonical(),
        ClosureOrder::Seeded(seed) => closure.run_seeded(&mut ChaCha8Rng::seed_from_u64(seed)),
    };
    Ok(match escape {
        Err(escape) => GoodSetOutcome::Escape(escape),
        Ok(()) => GoodSetOutcome::Family(closure.into_family()),
    })
}

struct Working {
    set: VertexSet,
    trace: Vec<TraceStep>,
}

struct Closure<'g> {
    g: &'g Graph,
    k: usize,
    cap_check: bool,
    slots: Vec<Option<Working>>,
    owner: Vec<Option<usize>>,
    unstable: BTreeSet<usize>,
}

type Step = std::result::Result<(), GoodSetEscape>;

impl<'g> Closure<'g> {
    fn new(g: &'g Graph, k: usize, cap_check: bool) -> Self {
        let mut slots = Vec::new();
        let mut owner = vec![None; g.universe()];
        for v in g.degree_exactly(k).iter() {
            owner[v as usize] = Some(slots.len());
            slots.push(Some(Working { set: VertexSet::singleton(v), trace: vec![TraceStep::Seed { vertex: v }] }));
        }
        let unstable = (0..slots.len()).collect();
        Closure { g, k, cap_check, slots, owner, unstable }
    }

    fn set(&self, i: usize) -> &Working {
        self.slots[i].as_ref().expect("live slot")
    }

    /// Vertices outside slot `i` left with at most k−1 neighbours outside it.
    fn absorbable(&self, i: usize) -> Vec<VertexId> {
        let mut inside: BTreeMap<VertexId, usize> = BTreeMap::new();
        for v in self.set(i).set.iter() {
            for &u in self.g.neighbors(v) {
                if self.owner[u as usize] != Some(i) {
                    *inside.entry(u).or_default() += 1;
                }
            }
        }
        inside.into_iter().filter(|&(u, c)| self.g.degree(u) - c < self.k).map(|(u, _)| u).collect()
    }

    /// All pairs of distinct live slots joined by an edge, sorted.
    fn adjacent_pairs(&self) -> BTreeSet<(usize, usize)> {
        let mut pairs = BTreeSet::new();
        for (u, v) in self.g.edges() {
            if let (Some(a), Some(b)) = (self.owner[u as usize], self.owner[v as usize]) {
                if a != b {
                    pairs.insert((a.min(b), a.max(b)));
                }
            }
        }
        pairs
    }

    fn min_adjacent_pair(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (u, v) in self.g.edges() {
            if let (Some(a), Some(b)) = (self.owner[u as usize], self.owner[v as usize]) {
                if a != b {
                    let p = (a.min(b), a.max(b));
                    if best.map_or(true, |q| p < q) {
                        best = Some(p);
                    }
                }
            }
        }
        best
    }

    fn over_cap(&self, size: usize) -> bool {
        self.cap_check && self.k * size > self.g.n()
    }

    fn oversize(&self, grown: VertexSet, operands: [(&VertexSet, &[TraceStep]); 2]) -> GoodSetEscape {
        let [a, b] = operands;
        let (set, trace) = if b.0.len() > a.0.len() { b } else { a };
        GoodSetEscape::OversizeGoodSet { witness_set: set.clone(), witness_trace: trace.to_vec(), grown }
    }

    fn absorb(&mut self, i: usize, v: VertexId) -> Step {
        let a = self.slots[i].take().expect("live slot");
        let grown = a.set.union(&VertexSet::singleton(v));
        if self.over_cap(grown.len()) {
            let seed = [TraceStep::Seed { vertex: v }];
            return Err(self.oversize(grown, [(&a.set, &a.trace), (&VertexSet::singleton(v), &seed)]));
        }
        let mut trace = a.trace;
        trace.push(TraceStep::Absorb { set: a.set, vertex: v, result: grown.clone() });
        let absorbed = Working { set: grown, trace };

        match self.owner[v as usize] {
            None => {
                self.owner[v as usize] = Some(i);
                self.slots[i] = Some(absorbed);
                self.unstable.insert(i);
            }
            Some(j) => {
                let b = self.slots[j].take().expect("live slot");
                let x = absorbed.set.intersection(&b.set);
                let boundary = self.g.boundary_edge_count(&x).expect("members are vertices of g");
                if boundary <= (self.k - 1) * x.len() {
                    return Err(GoodSetEscape::SparseCut { witness_set: x, left: absorbed.set, right: b.set });
                }
                self.merge_into(i, j, absorbed, b, true)?;
            }
        }
        Ok(())
    }

    fn merge_into(&mut self, i: usize, j: usize, a: Working, b: Working, overlap: bool) -> Step {
        let merged = a.set.union(&b.set);
        if self.over_cap(merged.len()) {
            return Err(self.oversize(merged, [(&a.set, &a.trace), (&b.set, &b.trace)]));
        }
        let keep = i.min(j);
        let drop = i.max(j);
        let (left, right) = if i <= j { (a, b) } else { (b, a) };
        let mut trace = left.trace;
        trace.extend(right.trace);
        trace.push(if overlap {
            TraceStep::Overlap { left: left.set, right: right.set, result: merged.clone() }
        } else {
            TraceStep::Adjacent { left: left.set, right: right.set, result: merged.clone() }
        });
        for v in merged.iter() {
            self.owner[v as usize] = Some(keep);
        }
        self.slots[keep] = Some(Working { set: merged, trace });
        self.slots[drop] = None;
        self.unstable.remove(&drop);
        self.unstable.insert(keep);
        Ok(())
    }

    fn merge_adjacent(&mut self, i: usize, j: usize) -> Step {
        let a = self.slots[i].take().expect("live slot");
        let b = self.slots[j].take().expect("live slot");
        self.merge_into(i, j, a, b, false)
    }

    fn run_canonical(&mut self) -> Step {
        loop {
            let mut absorbed = false;
            while let Some(&i) = self.unstable.first() {
                match self.absorbable(i).first() {
                    Some(&v) => {
                        self.absorb(i, v)?;
                        absorbed = true;
                        break;
                    }
                    None => {
                        self.unstable.remove(&i);
                    }
                }
            }
            if absorbed {
                continue;
            }
            match self.min_adjacent_pair() {
                Some((i, j)) => self.merge_adjacent(i, j)?,
                None => return Ok(()),
            }
        }
    }

    fn run_seeded(&mut self, rng: &mut ChaCha8Rng) -> Step {
        loop {
            let pairs: Vec<(usize, usize)> = self.adjacent_pairs().into_iter().collect();
            let total = self.unstable.len() + pairs.len();
            if total == 0 {
                return Ok(());
            }
            let r = rng.gen_range(0..total);
            if r < self.unstable.len() {
                let i = *self.unstable.iter().nth(r).expect("index in range");
                let cands = self.absorbable(i);
                if cands.is_empty() {
                    self.unstable.remove(&i);
                } else {
                    let v = cands[rng.gen_range(0..cands.len())];
                    self.absorb(i, v)?;
                }
            } else {
                let (i, j) = pairs[r - self.unstable.len()];
                self.merge_adjacent(i, j)?;
            }
        }
    }

    fn into_family(self) -> GoodFamily {
        let mut live: Vec<Working> = self.slots.into_iter().flatten().collect();
        live.sort_by(|a, b| b.set.len().cmp(&a.set.len()).then(a.set.first().cmp(&b.set.first())));
        let (members, traces) = live.into_iter().map(|w| (w.set, w.trace)).unzip();
        GoodFamily { members, traces }
    }
}

/// Edge count check for a candidate good set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodSetAudit {
    pub boundary: usize,
    pub bound: usize,
    pub pass: bool,
    /// Whether |D| ≤ n/k, when requested.
    pub within_cap: Option<bool>,
}

pub fn audit_good_set(g: &Graph, d: &VertexSet, k: usize, n_cap_check: bool) -> Result<GoodSetAudit> {
    if d.is_empty() {
        return Err(Error::Domain("good set must be non-empty".into()));
    }
    let boundary = g.boundary_edge_count(d)?;
    let bound = (k - 1) * d.len() + 1;
    Ok(GoodSetAudit {
        boundary,
        bound,
        pass: boundary <= bound,
        within_cap: n_cap_check.then(|| k * d.len() <= g.n()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Remainder {
    Core(Graph),
    EmptyCore,
}

/// The k-core of G − D.
pub fn remove_and_peel(g: &Graph, d: &VertexSet, k: usize) -> Result<Remainder> {
    if d.is_empty() {
        return Err(Error::Domain("cannot remove an empty set".into()));
    }
    if d.len() + k > g.n() + 1 {
        return Err(Error::Domain(format!("|D| = {} exceeds n - k + 1 = {}", d.len(), (g.n() + 1).saturating_sub(k))));
    }
    let rest = g.delete(d)?;
    let core = peel_to_core(&rest, k).core;
    Ok(if core.is_empty() { Remainder::EmptyCore } else { Remainder::Core(core) })
}
