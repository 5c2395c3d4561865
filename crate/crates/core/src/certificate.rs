//! Extraction certificates and their independent check.

use serde::{Deserialize, Serialize};

use crate::edgelist::content_hash;
use crate::error::{Error, Result};
use crate::extract::Branch;
use crate::graph::{Graph, VertexSet};

pub const FORMAT: &str = "degcore-certificate/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub k: usize,
    pub t: usize,
    pub epsilon: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEcho {
    pub n: usize,
    pub m: usize,
    /// sha256 of the canonical edge list.
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub format: String,
    pub config: ConfigEcho,
    pub graph: GraphEcho,
    pub branch: Branch,
    pub witness: VertexSet,
    pub witness_size: usize,
    /// ⌊(1−ε)n⌋.
    pub size_bound: usize,
    pub size_bound_exact: String,
    pub replay_log: Vec<String>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }
}

/// Why a certificate was rejected.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum VerifyFailure {
    #[error("witness not induced in input: {0}")]
    NotInduced(String),
    #[error("min-degree violation: {0}")]
    MinDegree(String),
    #[error("size bound violation: {size} > {bound}")]
    SizeBound { size: usize, bound: usize },
}

/// Re-checks a certificate against G using only G, k and t: the graph
/// matches, the witness induces minimum degree at least k, and the witness
/// fits under ⌊(1−ε)n⌋.
pub fn verify_certificate(g: &Graph, cert: &Certificate) -> std::result::Result<(), VerifyFailure> {
    if cert.graph.sha256 != content_hash(g) || cert.graph.n != g.n() || cert.graph.m != g.m() {
        return Err(VerifyFailure::NotInduced("input graph differs from the certified one".into()));
    }
    if let Some(v) = cert.witness.iter().find(|&v| !g.contains(v)) {
        return Err(VerifyFailure::NotInduced(format!("vertex {v} is not in the input")));
    }
    let k = cert.config.k;
    if cert.witness.is_empty() {
        return Err(VerifyFailure::MinDegree("witness is empty".into()));
    }
    for v in &cert.witness {
        let d = g.neighbors(v).iter().filter(|&&u| cert.witness.contains(u)).count();
        if d < k {
            return Err(VerifyFailure::MinDegree(format!("vertex {v} has degree {d} < {k}")));
        }
    }
    let (kk, t) = (k as u64, cert.config.t as u64);
    let den = (10_000 * kk * kk).max(100 * kk * t);
    let n = g.n() as u64;
    let bound = (n - n.div_ceil(den)) as usize;
    if cert.witness.len() > bound {
        return Err(VerifyFailure::SizeBound { size: cert.witness.len(), bound });
    }
    Ok(())
}
