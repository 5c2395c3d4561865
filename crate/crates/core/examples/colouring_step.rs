//! Runs the colouring induction on small random graphs with J' forced to 1,
//! checking each state with the independent verifier.
//!
//!     cargo run --example colouring_step -- [seeds]

use degcore::buckets::DyadicBuckets;
use degcore::colouring::{Colouring, StepOutcome};
use degcore::generators::gen_gnm;
use degcore::goodsets::{grow_good_sets_with, ClosureOrder, GoodSetOutcome, GrowOptions};
use degcore::peel::peel_to_core;
use degcore::Graph;

const K: usize = 3;

/// Largest component of the 3-core of a random graph, if it has enough good sets.
fn instance(seed: u64) -> Option<(Graph, Vec<degcore::VertexSet>)> {
    let n = 14 + (seed % 20) as usize;
    let g = gen_gnm(n, 2 * n - 1 + (seed % 5) as usize, seed).ok()?;
    let core = peel_to_core(&g, K).core;
    let comp = core.components().into_iter().max_by_key(|c| c.len())?;
    let h = core.induced(&comp).ok()?;
    let opts = GrowOptions { order: ClosureOrder::Canonical, cap_check: false };
    match grow_good_sets_with(&h, K, opts).ok()? {
        GoodSetOutcome::Family(f) if f.m() >= 3 => Some((h, f.members)),
        _ => None,
    }
}

fn main() {
    let seeds: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let (mut full, mut relabel, mut witness) = (0, 0, 0);
    for seed in 0..seeds {
        let Some((h, members)) = instance(seed) else { continue };
        let buckets = DyadicBuckets::with_j_prime(&members, 1).unwrap();
        let col = Colouring::new(&h, &buckets, K);
        let mut state = col.init_state();
        assert!(col.verify(&state, state.ell).passed());
        while state.ell < buckets.j() {
            match col.assemble_step(&state) {
                Ok(StepOutcome::Advanced { state: next, audit }) => {
                    if audit.full { full += 1 } else { relabel += 1 }
                    println!("seed {seed} n={} {audit}", h.n());
                    state = next;
                    assert!(col.verify(&state, state.ell).passed());
                }
                Ok(StepOutcome::Witness { witness: w, .. }) => {
                    witness += 1;
                    println!("seed {seed} n={} strategy witness on {} vertices", h.n(), w.witness.n());
                    break;
                }
                Err(e) => {
                    println!("seed {seed} n={} error: {e}", h.n());
                    break;
                }
            }
        }
    }
    println!("full steps {full}, relabels {relabel}, witnesses {witness}");
}
