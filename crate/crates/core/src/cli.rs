//! The `degcore` command line.
//!
//! Machine-readable `key=value` lines go to stdout, human messages to stderr.
//! Exit codes: 0 success, 1 certificate rejected, 2 configuration or guard
//! failure, 3 unreadable input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use crate::certificate::{verify_certificate, Certificate};
use crate::edgelist::{parse, to_canonical};
use crate::error::Error;
use crate::extract::{extract, ExtractionConfig};
use crate::generators::{gen_near_threshold, gen_wheel};
use crate::goodsets::{grow_good_sets, GoodSetOutcome};
use crate::buckets::DyadicBuckets;
use crate::graph::Graph;
use crate::oracle::brute_min_subgraph;
use crate::peel::{fact1_threshold, peel_to_core};

#[derive(Parser, Debug)]
#[command(name = "degcore", version, about = "Small minimum-degree subgraphs with checkable certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Extract a witness and write its certificate.
    Extract {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        /// Edge-list file, or a directory of them.
        #[arg(short, long)]
        input: PathBuf,
        /// Certificate path; defaults to `<input>.cert.json`.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print the replay log to stderr.
        #[arg(long)]
        audit: bool,
        /// Worker threads for directory input.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check a certificate against its input graph.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        cert: PathBuf,
    },
    /// Smallest min-degree-k subgraph by exhaustive search (n ≤ 20).
    Oracle {
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Write a generated graph as a canonical edge list.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Print degree, core and good-set statistics.
    Audit {
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        t: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// Generalized wheel: K_{k-2} joined to C_{n-k+2}.
    Wheel {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random graph with exactly (k-1)n - t + excess edges.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        excess: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// A failed command: exit code plus a one-line reason for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub reason: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Parse { .. }) { 3 } else { 2 };
        Failure { code, reason: e.to_string() }
    }
}

type Outcome = Result<Vec<String>, Failure>;

/// Runs a parsed command, returning the exit code.
pub fn run(cli: Cli, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let result = match cli.command {
        Command::Extract { k, t, input, output, audit, jobs } => run_extract(k, t, &input, output, audit, jobs, err),
        Command::Verify { input, cert } => run_verify(&input, &cert),
        Command::Oracle { k, input } => run_oracle(k, &input),
        Command::Gen { kind } => run_gen(kind),
        Command::Audit { k, input, t } => run_audit(k, t, &input),
    };
    match result {
        Ok(lines) => {
            for l in lines {
                let _ = writeln!(out, "{l}");
            }
            0
        }
        Err(f) => {
            let _ = writeln!(err, "{}", f.reason);
            f.code
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure { code: 3, reason: format!("cannot read {}: {e}", path.display()) })?;
    Ok(parse(&text)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure { code: 2, reason: format!("cannot write {}: {e}", path.display()) })
}

fn cert_path(input: &Path) -> PathBuf {
    let mut s = input.as_os_str().to_owned();
    s.push(".cert.json");
    PathBuf::from(s)
}

fn extract_one(cfg: &ExtractionConfig, input: &Path, output: &Path) -> Result<Certificate, Failure> {
    let g = read_graph(input)?;
    let cert = extract(&g, cfg)?;
    write_file(output, &cert.to_json())?;
    Ok(cert)
}

fn run_extract(
    k: usize,
    t: usize,
    input: &Path,
    output: Option<PathBuf>,
    audit: bool,
    jobs: usize,
    err: &mut impl Write,
) -> Outcome {
    let cfg = ExtractionConfig::new(k, t)?;
    if !input.is_dir() {
        let output = output.unwrap_or_else(|| cert_path(input));
        let cert = extract_one(&cfg, input, &output)?;
        if audit {
            for l in &cert.replay_log {
                let _ = writeln!(err, "{l}");
            }
        }
        return Ok(vec![
            format!("branch={} size={}", cert.branch, cert.witness_size),
            format!("certificate={}", output.display()),
        ]);
    }

    let mut files: Vec<PathBuf> = fs::read_dir(input)
        .map_err(|e| Failure { code: 3, reason: format!("cannot list {}: {e}", input.display()) })?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && !p.to_string_lossy().ends_with(".cert.json"))
        .collect();
    files.sort();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure { code: 2, reason: format!("thread pool: {e}") })?;
    let results: Vec<(PathBuf, Result<Certificate, Failure>)> = pool.install(|| {
        files.par_iter().map(|f| (f.clone(), extract_one(&cfg, f, &cert_path(f)))).collect()
    });

    let mut lines = Vec::new();
    let mut worst = 0;
    for (f, r) in results {
        match r {
            Ok(c) => lines.push(format!("file={} branch={} size={}", f.display(), c.branch, c.witness_size)),
            Err(e) => {
                let _ = writeln!(err, "{}: {}", f.display(), e.reason);
                lines.push(format!("file={} error={}", f.display(), e.code));
                worst = worst.max(e.code);
            }
        }
    }
    if worst != 0 {
        for l in &lines {
            let _ = writeln!(err, "{l}");
        }
        return Err(Failure { code: worst, reason: "some inputs failed".into() });
    }
    Ok(lines)
}

fn run_verify(input: &Path, cert: &Path) -> Outcome {
    let g = read_graph(input)?;
    let text = fs::read_to_string(cert)
        .map_err(|e| Failure { code: 3, reason: format!("cannot read {}: {e}", cert.display()) })?;
    let c = Certificate::from_json(&text)?;
    match verify_certificate(&g, &c) {
        Ok(()) => Ok(vec!["verify=ok".into(), format!("branch={} size={}", c.branch, c.witness.len())]),
        Err(e) => Err(Failure { code: 1, reason: e.to_string() }),
    }
}

fn run_oracle(k: usize, input: &Path) -> Outcome {
    let g = read_graph(input)?;
    let r = brute_min_subgraph(&g, k)?;
    Ok(vec![match r.min_size {
        Some(s) => format!("min_size={s}"),
        None => "none".into(),
    }])
}

fn run_gen(kind: GenKind) -> Outcome {
    let (g, output) = match kind {
        GenKind::Wheel { k, n, output } => (gen_wheel(k, n)?, output),
        GenKind::Random { n, k, t, seed, excess, output } => (gen_near_threshold(n, k, t, excess, seed)?, output),
    };
    let text = to_canonical(&g);
    match output {
        Some(p) => {
            write_file(&p, &text)?;
            Ok(vec![format!("n={} m={}", g.n(), g.m()), format!("output={}", p.display())])
        }
        None => Ok(text.lines().map(String::from).collect()),
    }
}

fn run_audit(k: usize, t: Option<usize>, input: &Path) -> Outcome {
    let g = read_graph(input)?;
    let n = g.n();
    let mut lines = vec![format!("n={n} m={}", g.m())];
    if let Ok(th) = fact1_threshold(k, n) {
        lines.push(format!("fact1_threshold={th}"));
    }
    if let Some(t) = t {
        let cfg = ExtractionConfig::new(k, t)?;
        lines.push(format!("edge_requirement={} epsilon={} size_bound={}", cfg.edge_requirement(n), cfg.epsilon(), cfg.size_bound(n)));
    }
    let core = peel_to_core(&g, k).core;
    lines.push(format!("core_size={} degree_k={}", core.n(), core.degree_exactly(k).len()));
    if core.is_empty() {
        return Ok(lines);
    }
    match grow_good_sets(&core, k)? {
        GoodSetOutcome::Escape(e) => lines.push(format!("good_sets=escape witness_size={}", e.witness_set().len())),
        GoodSetOutcome::Family(f) => {
            lines.push(format!("good_sets={} total={}", f.m(), f.total_size()));
            if let Ok(b) = DyadicBuckets::partition(&f.members, core.n(), k) {
                lines.push(format!("J={} J'={}", b.j(), b.j_prime()));
            }
        }
    }
    Ok(lines)
}
