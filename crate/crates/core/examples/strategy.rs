//! Building a deletion strategy and replaying it on a larger graph.
//!
//!     cargo run --example strategy

use degcore::shadow::ShadowContext;
use degcore::strategy::{build_strategy, StrategyOutcome};
use degcore::Graph;

fn main() {
    // H is the path 0-1-2; the target adds vertex 3 joined to all of it
    let h = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
    let target = Graph::from_edges(4, [(0, 1), (1, 2), (3, 0), (3, 1), (3, 2)]).unwrap();

    let ctx = ShadowContext::new(&h, &[], 2).unwrap();
    let StrategyOutcome::Strategy(st) = build_strategy(&ctx).unwrap() else {
        panic!("a path has no subgraph of minimum degree 2");
    };
    println!("{}", serde_json::to_string_pretty(&st.record()).unwrap());
    let kept = st.apply(&target).unwrap();
    println!("replay keeps {} (min degree {:?})", kept.vertex_set(), kept.min_degree());

    // a triangle with a pendant: the strategy builder finds the triangle instead
    let h = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (1, 3)]).unwrap();
    if let StrategyOutcome::Witness(w) = build_strategy(&ShadowContext::new(&h, &[], 2).unwrap()).unwrap() {
        println!("witness {} after {} layer(s)", w.witness.vertex_set(), w.depth);
    }
}
