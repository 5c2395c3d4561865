//! Maximal good sets of two K4s joined by a partial matching, with the rule
//! trace that built each one.
//!
//!     cargo run --example good_sets

use degcore::goodsets::{audit_good_set, grow_good_sets, GoodSetOutcome};
use degcore::Graph;

fn main() {
    let mut edges = Vec::new();
    for base in [0, 4] {
        for u in 0..4 {
            for v in u + 1..4 {
                edges.push((base + u, base + v));
            }
        }
    }
    edges.extend([(0, 4), (1, 5), (2, 6)]);
    let g = Graph::from_edges(8, edges).unwrap();

    match grow_good_sets(&g, 3).unwrap() {
        GoodSetOutcome::Family(f) => {
            for (d, trace) in f.members.iter().zip(&f.traces) {
                let a = audit_good_set(&g, d, 3, true).unwrap();
                println!("{d}: boundary {} <= {}", a.boundary, a.bound);
                for step in trace {
                    println!("  {step}");
                }
            }
        }
        GoodSetOutcome::Escape(e) => println!("escape: {e:?}"),
    }
}
