//! The red/blue shrink on complete graphs and on a random graph with few
//! degree-k vertices.
//!
//!     cargo run --example appendix_shrink

use degcore::appendix::{shrink_bound, shrink_traced};
use degcore::Graph;

fn complete(n: u32) -> Graph {
    Graph::from_edges(n as usize, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

fn main() {
    let k = 3;
    for n in [5, 6, 9, 12] {
        let out = shrink_traced(&complete(n), k).unwrap();
        let s = &out.state;
        println!(
            "K{n}: trims {:?} red {:?} blue {} -> {} vertices (bound {})",
            s.trims,
            s.red_order,
            s.blue,
            out.graph.n(),
            shrink_bound(n as usize, k)
        );
    }
}
