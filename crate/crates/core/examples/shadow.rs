//! Shadows of low-degree vertices and how their deficiency grows.
//!
//!     cargo run --example shadow

use degcore::graph::VertexSet;
use degcore::shadow::{verify_shadow_closure, ShadowContext};
use degcore::Graph;

fn main() {
    // path 0-1-2-3 hanging off a K4 on {3,4,5,6}
    let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)]).unwrap();
    let ctx = ShadowContext::new(&g, &[], 3).unwrap();
    for w in [0, 1, 2] {
        let r = ctx.shadow(w).unwrap();
        println!("sh({w}) = {}  steps {:?}  deficiency {:?}", r.y, r.trace, r.deficiency_history);
        assert!(verify_shadow_closure(&ctx, &r.y, w).is_ok());
    }

    // the same graph with the K4 held as one collection member
    let member: VertexSet = (3..7).collect();
    let with_member = [member];
    let ctx = ShadowContext::new(&g, &with_member, 3).unwrap();
    let r = ctx.shadow(2).unwrap();
    println!("with member {}: sh(2) = {}  steps {:?}  deficiency {:?}", with_member[0], r.y, r.trace, r.deficiency_history);
}
