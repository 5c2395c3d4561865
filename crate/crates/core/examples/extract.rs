//! Extracts witnesses from seeded random graphs at the edge threshold and
//! prints a certificate plus a tally of the branches taken.
//!
//!     cargo run --example extract -- [instances]

use std::collections::BTreeMap;

use degcore::generators::gen_near_threshold;
use degcore::{extract, verify_certificate, ExtractionConfig};

fn main() {
    let count: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let cfg = ExtractionConfig::new(3, 1).unwrap();
    let mut tally = BTreeMap::new();
    for seed in 0..count {
        let n = 10 + (seed % 31) as usize;
        let excess = (seed / 31 % 8) as usize;
        let g = gen_near_threshold(n, cfg.k, cfg.t, excess, seed).unwrap();
        let cert = extract(&g, &cfg).unwrap();
        verify_certificate(&g, &cert).unwrap();
        if seed == 0 {
            print!("{}", cert.to_json());
        }
        *tally.entry(cert.branch).or_insert(0) += 1;
    }
    for (branch, c) in tally {
        println!("{branch:<18} {c}");
    }
}
