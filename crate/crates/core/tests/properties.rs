mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use degcore::appendix::{shrink_bound, shrink_traced};
use degcore::buckets::DyadicBuckets;
use degcore::colouring::{greedy_list_colour, palette_size, Colouring, ListColouringProblem, StepOutcome, POPULARITY_LIMIT};
use degcore::edgelist::{parse, to_canonical};
use degcore::generators::{gen_gnm, gen_near_threshold};
use degcore::goodsets::{audit_good_set, grow_good_sets, grow_good_sets_with, ClosureOrder, GoodSetOutcome, GrowOptions};
use degcore::oracle::brute_min_subgraph;
use degcore::peel::{fact1_threshold, peel_to_core};
use degcore::shadow::{verify_shadow_closure, ShadowContext};
use degcore::{extract, Branch, Certificate, ExtractionConfig, Graph, VertexSet};

use common::*;

fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..16).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), 0..=pairs, any::<u64>()).prop_map(|(n, m, seed)| gen_gnm(n, m, seed).unwrap())
    })
}

fn subset_of(g: &Graph, mask: u64) -> VertexSet {
    g.vertices().iter().copied().filter(|&v| mask >> (v % 64) & 1 == 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_text_round_trips(g in small_graph()) {
        let back = parse(&to_canonical(&g)).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn delete_and_induced_agree(g in small_graph(), mask in any::<u64>()) {
        let x = subset_of(&g, mask);
        let rest = g.vertex_set().difference(&x);
        let a = g.delete(&x).unwrap();
        let b = g.induced(&rest).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(g.m(), a.m() + boundary(&g, &x));
        prop_assert_eq!(g.boundary_edge_count(&x).unwrap(), boundary(&g, &x));
    }

    #[test]
    fn components_partition_vertices(g in small_graph()) {
        let comps = g.components();
        let total: usize = comps.iter().map(VertexSet::len).sum();
        prop_assert_eq!(total, g.n());
        for c in &comps {
            prop_assert!(g.induced(c).unwrap().is_connected());
        }
    }

    #[test]
    fn core_matches_oracle(g in small_graph(), k in 1usize..5) {
        let core = peel_to_core(&g, k).core;
        if let Some(d) = core.min_degree() {
            prop_assert!(d >= k);
        }
        let r = brute_min_subgraph(&g, k).unwrap();
        prop_assert_eq!(r.found, !core.is_empty());
        if let Some(ex) = r.example_set {
            prop_assert!(ex.is_subset(&core.vertex_set()));
            prop_assert!(induced_min_degree(&g, &ex).unwrap() >= k);
        }
    }

    #[test]
    fn threshold_forces_a_core(k in 2usize..6, n in 1usize..30, seed in any::<u64>()) {
        prop_assume!(n + 1 >= k);
        let th = fact1_threshold(k, n).unwrap() as usize;
        prop_assume!(th <= n * (n - 1) / 2);
        let g = gen_gnm(n, th, seed).unwrap();
        prop_assert!(!peel_to_core(&g, k).core.is_empty());
    }

    #[test]
    fn good_sets_are_maximal_and_sparse(seed in any::<u64>(), n in 8usize..30, extra in 0usize..6) {
        let g = gen_gnm(n, 2 * n + extra, seed).unwrap();
        let core = peel_to_core(&g, 3).core;
        prop_assume!(!core.is_empty());
        let out = grow_good_sets(&core, 3).unwrap();
        let seeded = grow_good_sets_with(&core, 3, GrowOptions { order: ClosureOrder::Seeded(seed), cap_check: true }).unwrap();
        if let (GoodSetOutcome::Family(a), GoodSetOutcome::Family(b)) = (&out, &seeded) {
            prop_assert_eq!(&a.members, &b.members);
        }
        let GoodSetOutcome::Family(f) = out else { return Ok(()) };
        for (i, d) in f.members.iter().enumerate() {
            let a = audit_good_set(&core, d, 3, true).unwrap();
            prop_assert!(a.pass && a.within_cap == Some(true));
            let rest = core.delete(d).unwrap();
            prop_assert!(rest.min_degree().is_some_and(|x| x >= 3));
            for e in &f.members[i + 1..] {
                prop_assert!(d.is_disjoint(e));
                prop_assert!(!d.iter().any(|v| core.neighbors(v).iter().any(|&u| e.contains(u))));
            }
        }
        for w in f.members.windows(2) {
            prop_assert!(w[0].len() >= w[1].len());
        }
        let covered: BTreeSet<_> = f.members.iter().flat_map(|d| d.iter()).collect();
        for v in core.degree_exactly(3).iter() {
            prop_assert!(covered.contains(&v));
        }
    }

    #[test]
    fn shadow_is_closed_and_minimal(seed in any::<u64>()) {
        let (g, members, k) = shadow_instance(seed);
        let ctx = ShadowContext::new(&g, &members, k).unwrap();
        for w in g.degree_at_most(k - 1).iter() {
            let y = ctx.shadow(w).unwrap().y;
            prop_assert!(verify_shadow_closure(&ctx, &y, w).is_ok());
            // dropping any vertex other than w breaks closure
            for v in y.iter().filter(|&v| v != w) {
                let smaller: VertexSet = y.iter().filter(|&u| u != v).collect();
                prop_assert!(verify_shadow_closure(&ctx, &smaller, w).is_err());
            }
        }
    }

    #[test]
    fn strategy_replays_hold(seed in any::<u64>()) {
        let Some(p) = strategy_pair(seed) else { return Ok(()) };
        prop_assert!(p.strategy.budget().holds());
        let out = p.strategy.apply(&p.target).unwrap();
        prop_assert!(out.min_degree().is_some_and(|d| d >= p.k));
        let removed = p.target.vertex_set().difference(&out.vertex_set());
        prop_assert!(removed.is_subset(&p.h.vertex_set()));
    }

    #[test]
    fn greedy_meets_every_constraint(seed in any::<u64>(), k in 2usize..6) {
        let (problem, _) = stress_problem(seed, k, 3);
        let psi = greedy_list_colour(&problem).unwrap();
        check_list_colouring(&problem, &psi)?;
    }

    #[test]
    fn shrink_respects_bound(seed in any::<u64>(), k in 3usize..5) {
        let Some(h) = few_degree_k_instance(seed, k) else { return Ok(()) };
        let out = shrink_traced(&h, k).unwrap();
        let s = &out.state;
        prop_assert!(out.graph.n() <= shrink_bound(h.n(), k));
        prop_assert!(out.graph.min_degree().is_some_and(|d| d >= k));
        prop_assert!(s.red.is_disjoint(&s.blue));
        prop_assert!(3 * s.t.len() >= h.n());
        prop_assert!(!s.trimmed.edges().any(|(u, v)| s.trimmed.degree(u) >= k + 2 && s.trimmed.degree(v) >= k + 2));
    }

    #[test]
    fn extraction_escapes_are_small(seed in any::<u64>(), n in 10usize..41, excess in 0usize..20) {
        let g = gen_near_threshold(n, 3, 1, excess, seed).unwrap();
        let cfg = ExtractionConfig::new(3, 1).unwrap();
        let cert = extract(&g, &cfg).unwrap();
        let size = cert.witness.len();
        let limit = match cert.branch {
            Branch::Disconnected => n.div_ceil(2),
            Branch::SingleBigGoodSet => n - n.div_ceil(300),
            Branch::SmallJPrimeEscape => n - n.div_ceil(300),
            Branch::OversizeGoodSet => n - n.div_ceil(6),
            _ => cfg.size_bound(n),
        };
        prop_assert!(size <= limit, "{} witness of {} > {}", cert.branch, size, limit);
        prop_assert!(induced_min_degree(&g, &cert.witness).unwrap() >= 3);
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        prop_assert_eq!(back, cert);
    }
}

/// Members 0..groups*(k+1), each in exactly `per` constraint sets of size
/// k + 1, with random lists of k colours.
fn stress_problem(seed: u64, k: usize, groups: usize) -> (ListColouringProblem, usize) {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let mut r = rng(seed);
    let members = groups * (k + 1);
    let palette = palette_size(k);
    let mut constraint_sets = BTreeMap::new();
    let mut lists = BTreeMap::new();
    let mut s = 0u32;
    for _ in 0..POPULARITY_LIMIT {
        let mut order: Vec<usize> = (0..members).collect();
        order.shuffle(&mut r);
        for chunk in order.chunks(k + 1) {
            constraint_sets.insert(s, chunk.to_vec());
            let list: BTreeSet<u32> = (0..k).map(|_| r.gen_range(1..=palette as u32)).collect();
            lists.insert(s, list);
            s += 1;
        }
    }
    let problem = ListColouringProblem { order: (0..members).collect(), constraint_sets, lists, palette, popular: BTreeSet::new() };
    (problem, members)
}

fn check_list_colouring(p: &ListColouringProblem, psi: &BTreeMap<usize, u32>) -> Result<(), TestCaseError> {
    for (s, set) in &p.constraint_sets {
        let colours: Vec<u32> = set.iter().filter_map(|d| psi.get(d).copied()).collect();
        let distinct: BTreeSet<u32> = colours.iter().copied().collect();
        prop_assert_eq!(distinct.len(), colours.len());
        prop_assert!(distinct.is_disjoint(&p.lists[s]));
    }
    for &d in &p.order {
        prop_assert_eq!(psi.contains_key(&d), !p.popular.contains(&d));
    }
    Ok(())
}

#[test]
fn greedy_survives_exactly_200_memberships() {
    for k in [2, 3, 5, 8] {
        let (problem, members) = stress_problem(k as u64, k, 4);
        let mut counts = vec![0; members];
        for set in problem.constraint_sets.values() {
            for &d in set {
                counts[d] += 1;
            }
        }
        assert!(counts.iter().all(|&c| c == POPULARITY_LIMIT));
        let psi = greedy_list_colour(&problem).unwrap();
        check_list_colouring(&problem, &psi).unwrap();
    }
}

/// Per-step bounds of the colouring induction, on forced-J' instances whose
/// graph also meets the edge requirement for k = 3, t = 1.
#[test]
fn colouring_steps_respect_their_budgets() {
    let (mut full, mut bounded) = (0, 0);
    for seed in 0..600u64 {
        let Some((g, members)) = colouring_instance(seed) else { continue };
        let dense = g.m() + 1 >= 2 * g.n();
        let buckets = DyadicBuckets::with_j_prime(&members, 1).unwrap();
        let col = Colouring::new(&g, &buckets, 3);
        let mut state = col.init_state();
        while state.ell < buckets.j() {
            let StepOutcome::Advanced { state: next, audit } = col.assemble_step(&state).unwrap() else { break };
            if audit.full {
                full += 1;
                let c = audit.uncoloured_in_bucket as i64;
                assert!(audit.popular * 200 <= 48 * audit.uncoloured_in_bucket);
                assert!(4 * audit.popular <= audit.bucket_size);
                let xs: usize = audit.x_prime_histogram.values().sum();
                assert_eq!(xs, palette_size(3));
                if dense {
                    bounded += 1;
                    assert!(audit.edge_defect <= 12 * c, "seed {seed}: defect {} > 12 * {c}", audit.edge_defect);
                    assert!(audit.s_weight as i64 <= 48 * c, "seed {seed}: weight {}", audit.s_weight);
                }
            }
            // every member of C is monochromatic or uncoloured
            for d in &buckets.members()[..buckets.covered()] {
                let cs: BTreeSet<_> = d.iter().map(|v| next.colour_of(v)).collect();
                assert_eq!(cs.len(), 1);
            }
            state = next;
        }
    }
    assert!(full > 0 && bounded > 0, "full {full}, bounded {bounded}");
}

#[test]
fn extraction_is_deterministic_and_oracle_dominated() {
    let cfg = ExtractionConfig::new(3, 1).unwrap();
    for seed in 0..60u64 {
        let n = 10 + (seed % 7) as usize;
        let g = gen_near_threshold(n, 3, 1, (seed % 4) as usize, seed).unwrap();
        let a = extract(&g, &cfg).unwrap();
        let b = extract(&g, &cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let r = brute_min_subgraph(&g, 3).unwrap();
        assert!(r.found && r.min_size.unwrap() <= a.witness.len());
    }
}
