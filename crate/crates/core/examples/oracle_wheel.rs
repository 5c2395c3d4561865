//! Generalized wheels sit exactly on the edge threshold and have no smaller
//! min-degree-k subgraph; one extra edge is enough to get one.
//!
//!     cargo run --example oracle_wheel

use degcore::generators::gen_wheel;
use degcore::oracle::brute_min_subgraph;
use degcore::peel::fact1_threshold;
use degcore::Graph;

fn main() {
    for (k, n) in [(3, 7), (4, 8), (5, 10)] {
        let w = gen_wheel(k, n).unwrap();
        let r = brute_min_subgraph(&w, k).unwrap();
        println!("wheel k={k} n={n}: m={} threshold={} min_size={:?}", w.m(), fact1_threshold(k, n).unwrap(), r.min_size);

        // add the first missing edge on the cycle
        let (u, v) = (k as u32 - 2, k as u32);
        let edges = w.edges().chain([(u, v)]);
        let plus = Graph::from_edges(n, edges).unwrap();
        let r = brute_min_subgraph(&plus, k).unwrap();
        println!("  plus edge {u}-{v}: min_size={:?} example={:?}", r.min_size, r.example_set);
    }
}
