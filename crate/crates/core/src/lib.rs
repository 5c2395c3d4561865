//! Small subgraphs of minimum degree k in graphs just above the edge
//! threshold.
//!
//! Every graph on n vertices with at least (k−1)n − t edges (for
//! 1 ≤ t ≤ (k−2)(k+1)/2 − 1) contains a subgraph of minimum degree at least k
//! on at most (1−ε)n vertices, ε = 1/max(10⁴k², 100kt). [`extract`] finds
//! one and returns a [`Certificate`] that [`verify_certificate`] checks from
//! the input graph alone.
//!
//! The building blocks are usable on their own:
//!
//! | module | runnable example |
//! |---|---|
//! | [`peel`] k-cores and the edge threshold | `cargo run --example peel` |
//! | [`goodsets`] maximal good sets | `cargo run --example good_sets` |
//! | [`shadow`] shadows and their deficiency | `cargo run --example shadow` |
//! | [`strategy`] deletion strategies | `cargo run --example strategy` |
//! | [`colouring`] one colouring induction step | `cargo run --example colouring_step` |
//! | [`appendix`] red/blue shrink | `cargo run --example appendix_shrink` |
//! | [`extract`](mod@extract) full pipeline and certificates | `cargo run --example extract` |
//! | [`oracle`], [`generators`] | `cargo run --example oracle_wheel` |
//!
//! ```
//! use degcore::{extract, verify_certificate, ExtractionConfig, Graph};
//!
//! let k5 = Graph::from_edges(5, (0..5u32).flat_map(|u| (u + 1..5).map(move |v| (u, v)))).unwrap();
//! let cert = extract(&k5, &ExtractionConfig::new(3, 1).unwrap()).unwrap();
//! assert_eq!(cert.witness.len(), 4);
//! assert!(verify_certificate(&k5, &cert).is_ok());
//! ```

pub mod appendix;
pub mod buckets;
pub mod certificate;
pub mod cli;
pub mod colouring;
pub mod edgelist;
pub mod error;
pub mod extract;
pub mod generators;
pub mod goodsets;
pub mod graph;
pub mod oracle;
pub mod peel;
pub mod shadow;
pub mod strategy;

pub use certificate::{verify_certificate, Certificate, VerifyFailure};
pub use error::{Error, Result};
pub use extract::{extract, extract_observed, Branch, ExtractionConfig};
pub use graph::{Graph, VertexId, VertexSet};
