//! Plain-text edge lists.
//!
//! ```text
//! # optional comments
//! p 4 3
//! 0 1
//! 1 2
//! 2 3
//! ```
//!
//! The `p <n> <m>` header is optional. Without it the vertex count is one
//! more than the largest id mentioned. Ids are 0-based.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub fn parse(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut seen_edge = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let err = |msg: String| Error::Parse { line: line_no, msg };
        if fields[0] == "p" {
            if header.is_some() || seen_edge {
                return Err(err("header must appear once, before any edge".into()));
            }
            if fields.len() != 3 {
                return Err(err("expected `p <n> <m>`".into()));
            }
            let n = fields[1].parse::<usize>().map_err(|e| err(format!("bad vertex count: {e}")))?;
            let m = fields[2].parse::<usize>().map_err(|e| err(format!("bad edge count: {e}")))?;
            header = Some((n, m));
            continue;
        }
        if fields.len() != 2 {
            return Err(err(format!("expected two vertex ids, found {}", fields.len())));
        }
        let u = fields[0].parse::<VertexId>().map_err(|e| err(format!("bad vertex id `{}`: {e}", fields[0])))?;
        let v = fields[1].parse::<VertexId>().map_err(|e| err(format!("bad vertex id `{}`: {e}", fields[1])))?;
        if u == v {
            return Err(err(format!("self-loop at vertex {u}")));
        }
        if let Some((n, _)) = header {
            if u as usize >= n || v as usize >= n {
                return Err(err(format!("vertex id out of range for n = {n}")));
            }
        }
        seen_edge = true;
        edges.push((u, v));
    }

    let n = match header {
        Some((n, m)) => {
            if m != edges.len() {
                return Err(Error::Parse { line: 0, msg: format!("header declares {m} edges, found {}", edges.len()) });
            }
            n
        }
        None => edges.iter().map(|&(u, v)| u.max(v) as usize + 1).max().unwrap_or(0),
    };
    Graph::from_edges(n, edges).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })
}

/// Canonical text: the header with the id-universe size, then edges `u v`
/// with `u < v` in lexicographic order.
pub fn to_canonical(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.universe(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// SHA-256 of the canonical serialization, hex encoded.
pub fn content_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(to_canonical(g).as_bytes()))
}
