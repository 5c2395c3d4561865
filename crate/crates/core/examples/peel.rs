//! k-core peeling and the edge count that forces a non-empty core.
//!
//!     cargo run --example peel

use degcore::generators::gen_gnm;
use degcore::peel::{fact1_threshold, peel_to_core};
use degcore::Graph;

fn main() {
    // a triangle with a pendant vertex hanging off it
    let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
    let r = peel_to_core(&g, 2);
    println!("2-core of triangle+pendant: {} (removed {:?})", r.core.vertex_set(), r.removed_order);

    for k in 2..=5 {
        let n = 12;
        let th = fact1_threshold(k, n).unwrap() as usize;
        let below = peel_to_core(&gen_gnm(n, th - 1, 1).unwrap(), k).core.n();
        let at = peel_to_core(&gen_gnm(n, th, 1).unwrap(), k).core.n();
        println!("k={k} n={n}: threshold {th}, core size at th-1 = {below}, at th = {at}");
    }
}
