//! Partial colourings of G with 401k colours, built bucket by bucket.
//!
//! A colouring is ℓ-appropriate when
//!
//! 1. every coloured vertex carries one palette colour,
//! 2. every member of C is monochromatic or uncoloured,
//! 3. ē_G(X_i) ≤ (k−1)|X_i| + y_i, where y_i counts members of C₁ … C_ℓ
//!    coloured i,
//! 4. G − X_i has minimum degree at least k for every colour i,
//! 5. members of C₁ … C_{J′} are uncoloured,
//! 6. at most a quarter of each C_j with J′ < j ≤ ℓ is uncoloured,
//! 7. uncoloured members of C_{ℓ+1} … C_J have only uncoloured neighbours.
//!
//! The all-uncoloured colouring is J′-appropriate. [`Colouring::assemble_step`]
//! turns an ℓ-appropriate colouring into an (ℓ+1)-appropriate one by colouring
//! members of C_{ℓ+1} greedily and replaying one deletion strategy per colour.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::buckets::DyadicBuckets;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::shadow::ShadowContext;
use crate::strategy::{build_strategy, StrategyOutcome, WitnessFound};

pub type Colour = u32;

/// Number of colours per unit of k.
pub const PALETTE_FACTOR: usize = 401;

/// A member of C′ in more than this many constraint sets stays uncoloured.
pub const POPULARITY_LIMIT: usize = 200;

pub fn palette_size(k: usize) -> usize {
    PALETTE_FACTOR * k
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouringState {
    pub ell: usize,
    /// Coloured vertices only; colours run from 1 to `palette_size`.
    pub assignment: BTreeMap<VertexId, Colour>,
    pub palette_size: usize,
}

impl ColouringState {
    pub fn colour_of(&self, v: VertexId) -> Option<Colour> {
        self.assignment.get(&v).copied()
    }

    /// X_i for colour `c`.
    pub fn class(&self, c: Colour) -> VertexSet {
        self.assignment.iter().filter(|&(_, &x)| x == c).map(|(&v, _)| v).collect()
    }

    /// Non-empty colour classes by colour.
    pub fn classes(&self) -> BTreeMap<Colour, VertexSet> {
        let mut out: BTreeMap<Colour, Vec<VertexId>> = BTreeMap::new();
        for (&v, &c) in &self.assignment {
            out.entry(c).or_default().push(v);
        }
        out.into_iter().map(|(c, vs)| (c, VertexSet::from_sorted(vs))).collect()
    }

    /// y_i for every colour with a non-zero count: members of C₁ … C_ℓ fully
    /// coloured i.
    pub fn counters(&self, buckets: &DyadicBuckets) -> BTreeMap<Colour, usize> {
        let mut y = BTreeMap::new();
        for d in &buckets.members()[buckets.prefix(self.ell.min(buckets.j()))] {
            if let Some(c) = monochrome(&self.assignment, d) {
                *y.entry(c).or_default() += 1;
            }
        }
        y
    }

    pub fn coloured_count(&self) -> usize {
        self.assignment.len()
    }
}

/// The colour of `d` if every vertex of `d` carries it.
fn monochrome(assignment: &BTreeMap<VertexId, Colour>, d: &VertexSet) -> Option<Colour> {
    let c = *assignment.get(&d.first()?)?;
    d.iter().all(|v| assignment.get(&v) == Some(&c)).then_some(c)
}

fn uncoloured(assignment: &BTreeMap<VertexId, Colour>, d: &VertexSet) -> bool {
    d.iter().all(|v| !assignment.contains_key(&v))
}

/// Input to the greedy list colouring of C′.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ListColouringProblem {
    /// Members to colour, in colouring order.
    pub order: Vec<usize>,
    /// C(s) for each s ∈ S′.
    pub constraint_sets: BTreeMap<VertexId, Vec<usize>>,
    /// L(s) for each s ∈ S′.
    pub lists: BTreeMap<VertexId, BTreeSet<Colour>>,
    pub palette: usize,
    pub popular: BTreeSet<usize>,
}

/// Colours each non-popular member with the smallest colour that avoids
/// L(s) and the colours already given to other members of C(s), for every
/// C(s) containing it.
pub fn greedy_list_colour(problem: &ListColouringProblem) -> Result<BTreeMap<usize, Colour>> {
    let mut memberships: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for (&s, set) in &problem.constraint_sets {
        for &d in set {
            memberships.entry(d).or_default().push(s);
        }
    }
    let mut psi: BTreeMap<usize, Colour> = BTreeMap::new();
    for &d in &problem.order {
        if problem.popular.contains(&d) {
            continue;
        }
        let mut forbidden = BTreeSet::new();
        for s in memberships.get(&d).into_iter().flatten() {
            if let Some(list) = problem.lists.get(s) {
                forbidden.extend(list.iter().copied());
            }
            forbidden.extend(problem.constraint_sets[s].iter().filter_map(|other| psi.get(other).copied()));
        }
        let colour = (1..=problem.palette as Colour)
            .find(|c| !forbidden.contains(c))
            .ok_or(Error::PaletteExhausted { member: d })?;
        psi.insert(d, colour);
    }
    Ok(psi)
}

/// What one induction step did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepAudit {
    /// ℓ before the step.
    pub ell: usize,
    pub bucket_size: usize,
    /// |C′_{ℓ+1}|.
    pub uncoloured_in_bucket: usize,
    /// False when the step only relabelled ℓ.
    pub full: bool,
    pub h_vertices: usize,
    /// (k−1)v(H) − e(H).
    pub edge_defect: i64,
    /// Σ_{s∈S} (k + 1 − deg_H(s)).
    pub s_weight: usize,
    pub constraint_sets: usize,
    pub popular: usize,
    pub strategy_depth: usize,
    /// |X′_i| → number of colours with that size, zero included.
    pub x_prime_histogram: BTreeMap<usize, usize>,
}

impl StepAudit {
    fn relabel(ell: usize, bucket_size: usize, uncoloured_in_bucket: usize) -> Self {
        StepAudit {
            ell,
            bucket_size,
            uncoloured_in_bucket,
            full: false,
            h_vertices: 0,
            edge_defect: 0,
            s_weight: 0,
            constraint_sets: 0,
            popular: 0,
            strategy_depth: 0,
            x_prime_histogram: BTreeMap::new(),
        }
    }
}

impl fmt::Display for StepAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step ell={} bucket={} uncoloured={}", self.ell, self.bucket_size, self.uncoloured_in_bucket)?;
        if !self.full {
            return write!(f, " relabel");
        }
        write!(
            f,
            " full h={} defect={} s_weight={} constraint_sets={} popular={} depth={} x_prime=",
            self.h_vertices, self.edge_defect, self.s_weight, self.constraint_sets, self.popular, self.strategy_depth
        )?;
        let parts: Vec<String> = self.x_prime_histogram.iter().map(|(s, c)| format!("{s}:{c}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Advanced { state: ColouringState, audit: StepAudit },
    Witness { witness: WitnessFound, audit: StepAudit },
}

/// The fixed data of a colouring induction: G, its buckets, and k.
#[derive(Clone, Copy, Debug)]
pub struct Colouring<'a> {
    graph: &'a Graph,
    buckets: &'a DyadicBuckets,
    k: usize,
}

impl<'a> Colouring<'a> {
    pub fn new(graph: &'a Graph, buckets: &'a DyadicBuckets, k: usize) -> Self {
        Colouring { graph, buckets, k }
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn buckets(&self) -> &'a DyadicBuckets {
        self.buckets
    }

    pub fn init_state(&self) -> ColouringState {
        ColouringState { ell: self.buckets.j_prime(), assignment: BTreeMap::new(), palette_size: palette_size(self.k) }
    }

    pub fn verify(&self, state: &ColouringState, ell: usize) -> AppropriateReport {
        verify_appropriate(self.graph, self.buckets, self.k, state, ell)
    }

    /// One induction step from ℓ to ℓ + 1.
    pub fn assemble_step(&self, state: &ColouringState) -> Result<StepOutcome> {
        let (g, buckets, k) = (self.graph, self.buckets, self.k);
        let ell = state.ell;
        if ell >= buckets.j() {
            return Err(Error::PreconditionViolated(format!("ell = {ell} is already J")));
        }
        let next = ell + 1;
        let phi = &state.assignment;
        let bucket = buckets.range(next);
        let c_prime: Vec<usize> = bucket.clone().filter(|&i| uncoloured(phi, &buckets.members()[i])).collect();

        if 4 * c_prime.len() <= bucket.len() {
            let state = ColouringState { ell: next, ..state.clone() };
            return Ok(StepOutcome::Advanced { state, audit: StepAudit::relabel(ell, bucket.len(), c_prime.len()) });
        }
        let mut audit = StepAudit { full: true, ..StepAudit::relabel(ell, bucket.len(), c_prime.len()) };

        // H = G minus C₁ … C_{ℓ+1} minus every coloured vertex
        let mut removed: Vec<VertexId> = phi.keys().copied().collect();
        for d in &buckets.members()[buckets.prefix(next)] {
            removed.extend(d.iter());
        }
        let h = g.delete(&removed.into_iter().collect())?;
        if h.is_empty() {
            return Err(Error::InternalInvariantBreach(format!("H is empty at ell = {ell}")));
        }
        let c_h: Vec<VertexSet> =
            buckets.members()[..buckets.covered()].iter().filter(|d| d.iter().all(|v| h.contains(v))).cloned().collect();
        audit.h_vertices = h.n();
        audit.edge_defect = (k as i64 - 1) * h.n() as i64 - h.m() as i64;

        let ctx = ShadowContext::new(&h, &c_h, k)
            .map_err(|e| Error::InternalInvariantBreach(format!("collection inside H is invalid: {e}")))?;
        let strategy = match build_strategy(&ctx)? {
            StrategyOutcome::Strategy(s) => s,
            StrategyOutcome::Witness(witness) => {
                audit.strategy_depth = witness.depth;
                return Ok(StepOutcome::Witness { witness, audit });
            }
        };
        audit.strategy_depth = strategy.layers.len();
        audit.s_weight = strategy.s.iter().map(|s| k + 1 - h.degree(s)).sum();

        // C(s) and L(s) for s ∈ S′
        let mut member_of = vec![None; g.universe()];
        for &i in &c_prime {
            for v in &buckets.members()[i] {
                member_of[v as usize] = Some(i);
            }
        }
        let mut problem = ListColouringProblem { order: c_prime.clone(), palette: state.palette_size, ..Default::default() };
        for s in strategy.s.iter() {
            let adjacent: BTreeSet<usize> = g.neighbors(s).iter().filter_map(|&u| member_of[u as usize]).collect();
            if adjacent.is_empty() {
                continue;
            }
            let take = k + 1 - h.degree(s);
            problem.constraint_sets.insert(s, adjacent.into_iter().take(take).collect());
            let colours: BTreeSet<Colour> = g.neighbors(s).iter().filter_map(|u| phi.get(u).copied()).collect();
            problem.lists.insert(s, colours.into_iter().take(k).collect());
        }
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &d in problem.constraint_sets.values().flatten() {
            *counts.entry(d).or_default() += 1;
        }
        problem.popular = counts.into_iter().filter(|&(_, c)| c > POPULARITY_LIMIT).map(|(d, _)| d).collect();
        audit.constraint_sets = problem.constraint_sets.len();
        audit.popular = problem.popular.len();
        let psi = greedy_list_colour(&problem)?;

        // Z_i: ψ-coloured members, grouped by colour
        let mut z: BTreeMap<Colour, VertexSet> = BTreeMap::new();
        for (&d, &c) in &psi {
            let entry = z.entry(c).or_default();
            *entry = entry.union(&buckets.members()[d]);
        }
        let classes = state.classes();

        // One replay per colour. A colour with neither φ-vertices nor ψ-members
        // leaves H̃ = G, which already has minimum degree k, so nothing is deleted.
        let active: Vec<Colour> = classes.keys().chain(z.keys()).copied().collect::<BTreeSet<_>>().into_iter().collect();
        let empty = VertexSet::new();
        let x_primes: Vec<(Colour, VertexSet)> = active
            .par_iter()
            .map(|&c| {
                let drop = classes.get(&c).unwrap_or(&empty).union(z.get(&c).unwrap_or(&empty));
                let htilde = g.delete(&drop)?;
                let kept = strategy.apply(&htilde).map_err(|e| match e {
                    Error::AdmissibilityViolated(msg) => {
                        Error::InternalInvariantBreach(format!("colour {c} target not admissible: {msg}"))
                    }
                    other => other,
                })?;
                Ok((c, htilde.vertex_set().difference(&kept.vertex_set())))
            })
            .collect::<Result<_>>()?;

        let mut rho = phi.clone();
        for (&d, &c) in &psi {
            for v in &buckets.members()[d] {
                if rho.insert(v, c).is_some() {
                    return Err(Error::InternalInvariantBreach(format!("vertex {v} coloured twice by psi")));
                }
            }
        }
        let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
        for (c, xp) in &x_primes {
            *histogram.entry(xp.len()).or_default() += 1;
            for v in xp {
                if rho.insert(v, *c).is_some() {
                    return Err(Error::InternalInvariantBreach(format!("vertex {v} coloured twice")));
                }
            }
        }
        *histogram.entry(0).or_default() += state.palette_size - x_primes.len();
        audit.x_prime_histogram = histogram;

        let state = ColouringState { ell: next, assignment: rho, palette_size: state.palette_size };
        if let Some(v) = self.verify(&state, next).violations.first() {
            return Err(Error::InternalInvariantBreach(format!("step to ell = {next} broke {v}")));
        }
        Ok(StepOutcome::Advanced { state, audit })
    }
}

/// A failed appropriateness condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition ({}): {}", self.condition, self.detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Condition {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::I => "i",
            Condition::II => "ii",
            Condition::III => "iii",
            Condition::IV => "iv",
            Condition::V => "v",
            Condition::VI => "vi",
            Condition::VII => "vii",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AppropriateReport {
    /// Every failure found, in condition order.
    pub violations: Vec<Violation>,
}

impl AppropriateReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn has(&self, condition: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }
}

/// Checks the seven conditions against G, the buckets and the assignment,
/// without reusing anything computed by the induction step.
pub fn verify_appropriate(
    g: &Graph,
    buckets: &DyadicBuckets,
    k: usize,
    state: &ColouringState,
    ell: usize,
) -> AppropriateReport {
    let mut out = Vec::new();
    let mut fail = |condition: Condition, detail: String| out.push(Violation { condition, detail });
    let colour = |v: VertexId| state.assignment.get(&v).copied();
    let c_members = &buckets.members()[..buckets.covered()];

    for (&v, &c) in &state.assignment {
        if !g.contains(v) {
            fail(Condition::I, format!("coloured id {v} is not a vertex"));
        } else if c == 0 || c as usize > state.palette_size {
            fail(Condition::I, format!("vertex {v} has colour {c} outside 1..={}", state.palette_size));
        }
    }

    for (i, d) in c_members.iter().enumerate() {
        let colours: BTreeSet<Option<Colour>> = d.iter().map(colour).collect();
        if colours.len() > 1 {
            fail(Condition::II, format!("member {i} {d} is split across colours"));
        }
    }

    let mut classes: BTreeMap<Colour, Vec<VertexId>> = BTreeMap::new();
    for (&v, &c) in &state.assignment {
        if g.contains(v) {
            classes.entry(c).or_default().push(v);
        }
    }
    let upto = ell.min(buckets.j());
    for (&c, xs) in &classes {
        let x: VertexSet = xs.iter().copied().collect();
        let y = c_members[..(1 << upto) - 1]
            .iter()
            .filter(|d| d.iter().all(|v| colour(v) == Some(c)))
            .count();
        // edges with an endpoint in X, counted directly
        let boundary = g.edges().filter(|&(a, b)| x.contains(a) || x.contains(b)).count();
        if boundary > (k - 1) * x.len() + y {
            fail(Condition::III, format!("colour {c}: {boundary} edges touch X, bound {}", (k - 1) * x.len() + y));
        }
        let rest = g.vertices().iter().copied().filter(|&v| !x.contains(v));
        let mut emptied = true;
        for v in rest {
            emptied = false;
            let d = g.neighbors(v).iter().filter(|&&u| !x.contains(u)).count();
            if d < k {
                fail(Condition::IV, format!("colour {c}: vertex {v} keeps degree {d} < {k}"));
                break;
            }
        }
        if emptied {
            fail(Condition::IV, format!("colour {c} covers every vertex"));
        }
    }

    for j in 1..=buckets.j_prime().min(buckets.j()) {
        for i in buckets.range(j) {
            if let Some(v) = c_members[i].iter().find(|&v| colour(v).is_some()) {
                fail(Condition::V, format!("member {i} of bucket {j} has coloured vertex {v}"));
            }
        }
    }

    for j in buckets.j_prime() + 1..=upto {
        let range = buckets.range(j);
        let open = range.clone().filter(|&i| c_members[i].iter().all(|v| colour(v).is_none())).count();
        if 4 * open > range.len() {
            fail(Condition::VI, format!("bucket {j} has {open} of {} members uncoloured", range.len()));
        }
    }

    for j in upto + 1..=buckets.j() {
        for i in buckets.range(j) {
            let d = &c_members[i];
            if d.iter().any(|v| colour(v).is_some()) {
                continue;
            }
            let touched = d.iter().flat_map(|v| g.neighbors(v).iter().copied()).find(|&u| colour(u).is_some());
            if let Some(u) = touched {
                fail(Condition::VII, format!("uncoloured member {i} of bucket {j} has coloured neighbour {u}"));
            }
        }
    }

    AppropriateReport { violations: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn palette_for_three() {
        assert_eq!(palette_size(3), 1203);
    }

    #[test]
    fn lone_member_gets_colour_one() {
        let p = ListColouringProblem { order: vec![0], palette: 1203, ..Default::default() };
        assert_eq!(greedy_list_colour(&p).unwrap(), BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn siblings_and_list_are_avoided() {
        let p = ListColouringProblem {
            order: vec![0, 1, 2, 3],
            constraint_sets: BTreeMap::from([(100, vec![0, 1, 2, 3])]),
            lists: BTreeMap::from([(100, BTreeSet::from([1, 2, 3]))]),
            palette: 1203,
            popular: BTreeSet::new(),
        };
        let psi = greedy_list_colour(&p).unwrap();
        assert_eq!(psi[&0], 4);
        assert_eq!(psi[&3], 7);
    }

    #[test]
    fn popular_members_stay_uncoloured() {
        let p = ListColouringProblem {
            order: vec![0, 1],
            constraint_sets: BTreeMap::from([(9, vec![0, 1])]),
            popular: BTreeSet::from([0]),
            palette: 5,
            ..Default::default()
        };
        assert_eq!(greedy_list_colour(&p).unwrap(), BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn tiny_palette_runs_out() {
        let p = ListColouringProblem {
            order: vec![0],
            constraint_sets: BTreeMap::from([(9, vec![0])]),
            lists: BTreeMap::from([(9, BTreeSet::from([1, 2]))]),
            palette: 2,
            popular: BTreeSet::new(),
        };
        assert_eq!(greedy_list_colour(&p), Err(Error::PaletteExhausted { member: 0 }));
    }
}
