//! Command-line front end: graph file parsing, dispatch to the partition
//! algorithms, self-verification and the JSON result document.
//!
//! Graph files are line oriented, `#` starts a comment:
//!
//! ```text
//! p graph <n> <m>
//! v <id 1..n> <weight >= 1>      (exactly n lines)
//! e <u> <v> [<edge weight>]      (exactly m lines)
//! ```

use std::fmt;
use std::fs;
use std::io::Write;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use connpart::bcp::{bcep, max_min_bcp, min_max_bcp, Objective};
use connpart::claw::is_claw_free;
use connpart::connectivity::vertex_connectivity_at_least;
use connpart::frac::Frac;
use connpart::gen::{gen_clawfree, gen_k_connected, GenSpec, Model};
use connpart::gl::{
    balanced_kconnected, balanced_targets, double_bounded_gl, gl_one_side, GlOptions, Side, TargetWeights,
};
use connpart::graph::{line_graph, VertexSet, WeightedGraph};
use connpart::oracle::{for_each_connected_k_partition, OracleBudget};
use connpart::partition::{Partition, PartitionDefect};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("inconsistent header: {0}")]
    InconsistentHeader(String),
    #[error("invalid graph: {0}")]
    Graph(connpart::error::Error),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("usage: {0}")]
    Usage(String),
    #[error("bad result document: {0}")]
    BadDocument(String),
    #[error("result does not verify: {0}")]
    Rejected(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: std::io::Error },
    #[error("graph is not claw-free: vertex {center} has pairwise non-adjacent neighbours {leaves:?}")]
    Claw { center: usize, leaves: Vec<usize> },
    #[error("{0}")]
    Algorithm(#[from] connpart::error::Error),
}

impl CliError {
    /// 0 ok, 1 infeasible or precondition, 2 parse error, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) | CliError::BadDocument(_) => 2,
            CliError::Rejected(_) | CliError::Claw { .. } => 1,
            CliError::SelfCheck(_) | CliError::Output { .. } => 3,
            CliError::Algorithm(e) if e.is_internal() => 3,
            CliError::Algorithm(e) if e.is_input() => 2,
            CliError::Algorithm(_) => 1,
        }
    }
}

/// Parsed graph file. `edge_weights` follows file order and is present only
/// when every edge line carries a weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: WeightedGraph,
    /// 0-based endpoints in file order.
    pub edges: Vec<(usize, usize)>,
    pub edge_weights: Option<Vec<u64>>,
}

impl GraphFile {
    /// Edge weights re-ordered to `graph.edges()` order.
    fn graph_order_weights(&self) -> Option<Vec<u64>> {
        let file = self.edge_weights.as_ref()?;
        let mut out = vec![0; file.len()];
        for (&(u, v), &w) in self.edges.iter().zip(file) {
            out[self.graph.edge_index(u, v).expect("parsed edge")] = w;
        }
        Some(out)
    }

    /// File position of every edge, indexed by `graph.edges()` position.
    fn file_positions(&self) -> Vec<usize> {
        let mut out = vec![0; self.edges.len()];
        for (pos, &(u, v)) in self.edges.iter().enumerate() {
            out[self.graph.edge_index(u, v).expect("parsed edge")] = pos;
        }
        out
    }
}

fn syntax(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, reason: reason.into() }
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| syntax(line, format!("{what} `{tok}` is not a valid number")))
}

fn vertex_id(tok: Option<&str>, line: usize, n: usize) -> Result<usize, ParseError> {
    let id: usize = number(tok, line, "vertex id")?;
    if id == 0 || id > n {
        return Err(syntax(line, format!("vertex id {id} outside 1..={n}")));
    }
    Ok(id - 1)
}

pub fn parse_graph(text: &str) -> Result<GraphFile, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut weights: Vec<Option<u64>> = Vec::new();
    let mut edges = Vec::new();
    let mut edge_weights = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let tag = toks.next().expect("non-empty line");
        match (tag, header) {
            ("p", None) => {
                if toks.next() != Some("graph") {
                    return Err(syntax(line, "header must read `p graph <n> <m>`"));
                }
                let n = number(toks.next(), line, "vertex count")?;
                let m = number(toks.next(), line, "edge count")?;
                header = Some((n, m));
                weights = vec![None; n];
            }
            ("p", Some(_)) => return Err(ParseError::InconsistentHeader(format!("second header on line {line}"))),
            (_, None) => return Err(syntax(line, "expected the `p graph <n> <m>` header first")),
            ("v", Some((n, _))) => {
                let id = vertex_id(toks.next(), line, n)?;
                let w: u64 = number(toks.next(), line, "vertex weight")?;
                if w == 0 {
                    return Err(syntax(line, "vertex weight must be at least 1"));
                }
                if weights[id].replace(w).is_some() {
                    return Err(syntax(line, format!("vertex {} listed twice", id + 1)));
                }
            }
            ("e", Some((n, _))) => {
                let u = vertex_id(toks.next(), line, n)?;
                let v = vertex_id(toks.next(), line, n)?;
                edges.push((u, v));
                if let Some(tok) = toks.next() {
                    let w: u64 = number(Some(tok), line, "edge weight")?;
                    if w == 0 {
                        return Err(syntax(line, "edge weight must be at least 1"));
                    }
                    edge_weights.push(w);
                }
            }
            (other, Some(_)) => return Err(syntax(line, format!("unknown line tag `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
    }
    let (n, m) = header.ok_or_else(|| ParseError::InconsistentHeader("missing `p graph` header".into()))?;
    if edges.len() != m {
        return Err(ParseError::InconsistentHeader(format!("header declares {m} edges, found {}", edges.len())));
    }
    let weights: Vec<u64> = weights
        .into_iter()
        .enumerate()
        .map(|(v, w)| w.ok_or_else(|| ParseError::InconsistentHeader(format!("vertex {} has no `v` line", v + 1))))
        .collect::<Result<_, _>>()?;
    let edge_weights = match edge_weights.len() {
        0 => None,
        len if len == m => Some(edge_weights),
        len => {
            return Err(ParseError::InconsistentHeader(format!("{len} of {m} edges carry a weight; give all or none")))
        }
    };
    let graph = WeightedGraph::new(n, &edges, &weights).map_err(ParseError::Graph)?;
    Ok(GraphFile { graph, edges, edge_weights })
}

pub fn read_graph_file(path: &Path) -> Result<GraphFile, ParseError> {
    let text = fs::read_to_string(path).map_err(|source| ParseError::Io { path: path.to_owned(), source })?;
    parse_graph(&text)
}

/// Graph file text for `g`, 1-based.
pub fn write_graph(g: &WeightedGraph) -> String {
    let mut out = format!("p graph {} {}\n", g.n(), g.m());
    for v in 0..g.n() {
        out.push_str(&format!("v {} {}\n", v + 1, g.weight(v)));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    BcpMinMax,
    BcpMaxMin,
    Bcep,
    GlLower,
    GlUpper,
    GlBoth,
    GlBalanced,
    Verify,
    Gen,
    Oracle,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    MinMax,
    MaxMin,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::MinMax => Objective::MinMax,
            ObjectiveArg::MaxMin => Objective::MaxMin,
        }
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    Ok((lo.parse().map_err(|_| "bad lower bound")?, hi.parse().map_err(|_| "bad upper bound")?))
}

/// Balanced connected partitions of vertex-weighted graphs.
#[derive(Debug, Clone, Parser)]
#[command(name = "partition", version)]
pub struct RunConfig {
    pub mode: Mode,
    /// Graph file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Claw parameter: the graph must be K_{1,c}-free.
    #[arg(long, default_value_t = 3)]
    pub c: usize,
    /// Descending targets for the GL modes.
    #[arg(long, value_delimiter = ',')]
    pub targets: Option<Vec<u64>>,
    /// Objective for `bcep` and `oracle`.
    #[arg(long, value_enum, default_value_t = ObjectiveArg::MinMax)]
    pub objective: ObjectiveArg,
    /// Result document checked by `verify`.
    #[arg(long)]
    pub result: Option<PathBuf>,
    #[arg(long)]
    pub verify_claw_free: bool,
    #[arg(long)]
    pub verify_k_connected: bool,
    /// Per-iteration invariant checks (also `PARTITION_DEBUG_ASSERTS=1`).
    #[arg(long)]
    pub debug_asserts: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Generator model: `gnp:P`, `harary:K[:EXTRA]`, `path`, `cycle`, `star:C`.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Inclusive vertex weight range for `gen`.
    #[arg(long, value_parser = parse_range, default_value = "1:1")]
    pub weights: (u64, u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: Vec<u64>,
    pub upper: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Certificate {
    Lambda { lambda: u64 },
    XHat { x_hat: u64 },
}

/// The JSON result document. Part ids are 1-based vertex ids, or 1-based
/// edge positions in file order for `bcep`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDoc {
    pub mode: String,
    pub k: usize,
    pub c: usize,
    pub objective: Option<u64>,
    pub bounds: Bounds,
    pub parts: Vec<Vec<usize>>,
    pub certificate: Option<Certificate>,
    pub verified: bool,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn load(cfg: &RunConfig) -> Result<GraphFile, CliError> {
    let path = cfg.input.as_deref().ok_or_else(|| usage(format!("{} needs --input", cfg.mode)))?;
    Ok(read_graph_file(path)?)
}

fn need_k(cfg: &RunConfig) -> Result<usize, CliError> {
    cfg.k.ok_or_else(|| usage(format!("{} needs --k", cfg.mode)))
}

fn need_targets(cfg: &RunConfig) -> Result<TargetWeights, CliError> {
    let t = cfg.targets.clone().ok_or_else(|| usage(format!("{} needs --targets", cfg.mode)))?;
    if cfg.k.is_some_and(|k| k != t.len()) {
        return Err(usage(format!("--k {} disagrees with {} targets", cfg.k.unwrap_or(0), t.len())));
    }
    Ok(TargetWeights::new(t)?)
}

fn options(cfg: &RunConfig) -> GlOptions {
    let env = std::env::var("PARTITION_DEBUG_ASSERTS").is_ok_and(|v| v == "1");
    GlOptions { debug_asserts: cfg.debug_asserts || env }
}

fn check_claw_free(cfg: &RunConfig, g: &WeightedGraph) -> Result<(), CliError> {
    if cfg.verify_claw_free {
        if let Some(w) = is_claw_free(g, cfg.c) {
            return Err(connpart::error::Error::ClawWitnessFound(w).into());
        }
    }
    Ok(())
}

fn check_k_connected(cfg: &RunConfig, g: &WeightedGraph, k: usize) -> Result<(), CliError> {
    if cfg.verify_k_connected && !vertex_connectivity_at_least(g, k) {
        return Err(connpart::error::Error::PreconditionViolated(format!("graph is not {k}-connected")).into());
    }
    Ok(())
}

fn one_based(p: &Partition) -> Vec<Vec<usize>> {
    p.parts().iter().map(|s| s.iter().map(|v| v + 1).collect()).collect()
}

/// Defect text with 1-based part and vertex ids.
fn describe(d: PartitionDefect) -> String {
    match d {
        PartitionDefect::EmptyPart(i) => format!("part {} is empty", i + 1),
        PartitionDefect::Disconnected(i) => format!("part {} is not connected", i + 1),
        PartitionDefect::Overlap(v) => format!("vertex {} is in two parts", v + 1),
        PartitionDefect::Uncovered(v) => format!("vertex {} is in no part", v + 1),
        PartitionDefect::OutOfRange(v) => format!("vertex {} does not exist", v + 1),
        other => other.to_string(),
    }
}

/// Checks `parts` (0-based) against `g`: a CVP with `k` parts inside the
/// per-part bounds (empty bound lists are unconstrained).
fn verify_parts(g: &WeightedGraph, parts: &[Vec<usize>], k: usize, bounds: &Bounds) -> Result<Partition, String> {
    for part in parts {
        if let Some(&v) = part.iter().find(|&&v| v >= g.n()) {
            return Err(format!("id {} out of range", v + 1));
        }
    }
    let p = Partition::new(parts.iter().map(|ids| VertexSet::new(g, ids.iter().copied())).collect());
    if p.len() != k {
        return Err(format!("{} parts, expected {k}", p.len()));
    }
    if parts.iter().zip(p.parts()).any(|(ids, s)| ids.len() != s.len()) {
        return Err("a part repeats an id".into());
    }
    p.check_cvp(g).map_err(describe)?;
    for (name, list, ok) in [
        ("lower", &bounds.lower, (|w, b| w >= b) as fn(u64, u64) -> bool),
        ("upper", &bounds.upper, |w, b| w <= b),
    ] {
        if list.is_empty() {
            continue;
        }
        if list.len() != k {
            return Err(format!("{name} bounds list has {} entries, expected {k}", list.len()));
        }
        for (i, (s, &b)) in p.parts().iter().zip(list).enumerate() {
            if !ok(s.weight(), b) {
                return Err(format!("part {} weighs {}, {name} bound {b}", i + 1, s.weight()));
            }
        }
    }
    Ok(p)
}

fn finish(g: &WeightedGraph, mut doc: ResultDoc) -> Result<ResultDoc, CliError> {
    let zero_based: Vec<Vec<usize>> = doc.parts.iter().map(|p| p.iter().map(|v| v - 1).collect()).collect();
    verify_parts(g, &zero_based, doc.k, &doc.bounds).map_err(CliError::SelfCheck)?;
    doc.verified = true;
    Ok(doc)
}

fn doc(cfg: &RunConfig, k: usize, objective: Option<u64>, bounds: Bounds, p: &Partition) -> ResultDoc {
    ResultDoc {
        mode: cfg.mode.to_string(),
        k,
        c: cfg.c,
        objective,
        bounds,
        parts: one_based(p),
        certificate: None,
        verified: false,
    }
}

fn run_bcp(cfg: &RunConfig, mode: Objective) -> Result<ResultDoc, CliError> {
    let file = load(cfg)?;
    let g = &file.graph;
    let k = need_k(cfg)?;
    check_claw_free(cfg, g)?;
    let c = cfg.c as u64;
    let (sol, bounds, cert) = match mode {
        Objective::MinMax => {
            let sol = min_max_bcp(g, k, cfg.c)?;
            let upper = vec![(c - 1) * sol.lower_certificate - 1; k];
            let cert = Certificate::Lambda { lambda: sol.lower_certificate };
            (sol, Bounds { lower: vec![], upper }, cert)
        }
        Objective::MaxMin => {
            let sol = max_min_bcp(g, k, cfg.c)?;
            let lower = vec![sol.lower_certificate / (c - 1); k];
            let cert = Certificate::XHat { x_hat: sol.lower_certificate };
            (sol, Bounds { lower, upper: vec![] }, cert)
        }
    };
    let mut d = doc(cfg, k, Some(sol.objective), bounds, &sol.parts);
    d.certificate = Some(cert);
    finish(g, d)
}

fn run_bcep(cfg: &RunConfig) -> Result<ResultDoc, CliError> {
    let file = load(cfg)?;
    let k = need_k(cfg)?;
    let weights = file.graph_order_weights().ok_or_else(|| usage("bcep needs a weight on every edge line"))?;
    let mode = Objective::from(cfg.objective);
    let sol = bcep(&file.graph, &weights, k, mode)?;
    let (line, _) = line_graph(&file.graph, &weights)?;
    let pos = file.file_positions();
    let parts: Vec<Vec<usize>> = sol
        .edge_ids
        .iter()
        .map(|ids| {
            let mut p: Vec<usize> = ids.iter().map(|&e| pos[e] + 1).collect();
            p.sort_unstable();
            p
        })
        .collect();
    let c = 3;
    let (bounds, cert) = match mode {
        Objective::MinMax => (
            Bounds { lower: vec![], upper: vec![(c - 1) * sol.lower_certificate - 1; k] },
            Certificate::Lambda { lambda: sol.lower_certificate },
        ),
        Objective::MaxMin => (
            Bounds { lower: vec![sol.lower_certificate / (c - 1); k], upper: vec![] },
            Certificate::XHat { x_hat: sol.lower_certificate },
        ),
    };
    let d = ResultDoc {
        mode: cfg.mode.to_string(),
        k,
        c: c as usize,
        objective: Some(sol.objective),
        bounds,
        parts,
        certificate: Some(cert),
        verified: false,
    };
    // Verified on the line graph in file edge order.
    let file_line = file_order_line_graph(&file, &line)?;
    finish(&file_line, d)
}

/// The line graph with vertex `i` standing for the `i`-th edge line.
fn file_order_line_graph(file: &GraphFile, line: &WeightedGraph) -> Result<WeightedGraph, CliError> {
    let pos = file.file_positions();
    let edges: Vec<(usize, usize)> = line.edges().map(|(a, b)| (pos[a], pos[b])).collect();
    let mut weights = vec![0; line.n()];
    for (e, &p) in pos.iter().enumerate() {
        weights[p] = line.weight(e);
    }
    Ok(WeightedGraph::new(line.n(), &edges, &weights)?)
}

fn gl_bounds(targets: &TargetWeights, lower: bool, upper: Option<Frac>) -> Bounds {
    let t = targets.as_slice();
    Bounds {
        lower: if lower { t.iter().map(|w| w.div_ceil(3)).collect() } else { vec![] },
        upper: upper.map_or_else(Vec::new, |f| t.iter().map(|&w| f.times(w).floor()).collect()),
    }
}

fn run_gl(cfg: &RunConfig) -> Result<ResultDoc, CliError> {
    let file = load(cfg)?;
    let g = &file.graph;
    let opts = options(cfg);
    let (targets, p) = match cfg.mode {
        Mode::GlBalanced => {
            let k = need_k(cfg)?;
            check_k_connected(cfg, g, k)?;
            let (p, _) = balanced_kconnected(g, k, opts)?;
            (balanced_targets(g.total_weight(), k, g.max_weight())?, p)
        }
        mode => {
            let targets = need_targets(cfg)?;
            check_k_connected(cfg, g, targets.k())?;
            let p = match mode {
                Mode::GlLower => gl_one_side(g, &targets, Side::Lower, opts)?,
                Mode::GlUpper => gl_one_side(g, &targets, Side::Upper, opts)?,
                _ => double_bounded_gl(g, &targets, opts)?.0,
            };
            (targets, p)
        }
    };
    let bounds = match cfg.mode {
        Mode::GlLower => gl_bounds(&targets, true, None),
        Mode::GlUpper => gl_bounds(&targets, false, Some(Frac::THREE)),
        Mode::GlBalanced => {
            let k = targets.k() as u64;
            let (lo, hi) = (g.total_weight() / k, g.total_weight().div_ceil(k));
            Bounds { lower: vec![lo.div_ceil(3); targets.k()], upper: vec![3 * hi; targets.k()] }
        }
        _ => gl_bounds(&targets, true, Some(targets.upper_factor())),
    };
    finish(g, doc(cfg, targets.k(), None, bounds, &p))
}

/// Exhaustive search stays practical up to about this size.
const ORACLE_BUDGET: OracleBudget = OracleBudget { max_vertices: 12, max_parts: 6 };

fn run_oracle(cfg: &RunConfig) -> Result<ResultDoc, CliError> {
    let file = load(cfg)?;
    let g = &file.graph;
    let k = need_k(cfg)?;
    let mode = Objective::from(cfg.objective);
    let mut best: Option<(u64, Vec<u64>)> = None;
    for_each_connected_k_partition(g, k, ORACLE_BUDGET, |blocks| {
        let weights = blocks.iter().map(|&b| (0..g.n()).filter(|&v| b >> v & 1 == 1).map(|v| g.weight(v)).sum());
        let value: u64 = match mode {
            Objective::MinMax => weights.max().unwrap_or(0),
            Objective::MaxMin => weights.min().unwrap_or(0),
        };
        let better = match (&best, mode) {
            (None, _) => true,
            (Some((b, _)), Objective::MinMax) => value < *b,
            (Some((b, _)), Objective::MaxMin) => value > *b,
        };
        if better {
            best = Some((value, blocks.to_vec()));
        }
        ControlFlow::Continue(())
    })?;
    let (opt, blocks) = best.ok_or(connpart::error::Error::NoPartitionExists(k))?;
    let p = Partition::new(
        blocks.iter().map(|&b| VertexSet::new(g, (0..g.n()).filter(|&v| b >> v & 1 == 1))).collect(),
    );
    let bounds = match mode {
        Objective::MinMax => Bounds { lower: vec![], upper: vec![opt; k] },
        Objective::MaxMin => Bounds { lower: vec![opt; k], upper: vec![] },
    };
    finish(g, doc(cfg, k, Some(opt), bounds, &p))
}

fn run_verify(cfg: &RunConfig) -> Result<ResultDoc, CliError> {
    let file = load(cfg)?;
    let path = cfg.result.as_deref().ok_or_else(|| usage("verify needs --result"))?;
    let text = fs::read_to_string(path)
        .map_err(|source| ParseError::Io { path: path.to_owned(), source })?;
    let mut d: ResultDoc = serde_json::from_str(&text).map_err(|e| CliError::BadDocument(e.to_string()))?;
    let g = if d.mode == Mode::Bcep.to_string() {
        let weights = file.graph_order_weights().ok_or_else(|| usage("bcep results need edge weights"))?;
        let (line, _) = line_graph(&file.graph, &weights)?;
        file_order_line_graph(&file, &line)?
    } else {
        file.graph
    };
    if d.parts.iter().flatten().any(|&v| v == 0) {
        return Err(CliError::Rejected("ids are 1-based".into()));
    }
    let zero_based: Vec<Vec<usize>> = d.parts.iter().map(|p| p.iter().map(|v| v - 1).collect()).collect();
    let p = verify_parts(&g, &zero_based, d.k, &d.bounds).map_err(CliError::Rejected)?;
    if let Some(obj) = d.objective {
        let actual = match d.mode.as_str() {
            "bcp-min-max" => Some(p.max_weight()),
            "bcp-max-min" => Some(p.min_weight()),
            _ => None,
        };
        if actual.is_some_and(|a| a != obj) {
            return Err(CliError::Rejected(format!("objective {obj} does not match the parts")));
        }
    }
    d.mode = Mode::Verify.to_string();
    d.verified = true;
    Ok(d)
}

fn run_gen(cfg: &RunConfig) -> Result<String, CliError> {
    let model: Model = cfg.model.as_deref().ok_or_else(|| usage("gen needs --model"))?.parse()?;
    let n = match model {
        Model::Star(_) => cfg.n.unwrap_or(0),
        _ => cfg.n.ok_or_else(|| usage("gen needs --n"))?,
    };
    let spec = GenSpec { seed: cfg.seed, n, model, weights: cfg.weights };
    let g = match model {
        Model::HararyPlus { .. } => gen_k_connected(&spec)?,
        _ => gen_clawfree(&spec)?,
    };
    Ok(write_graph(&g))
}

/// Claw witnesses are reported with 1-based ids like everything else.
fn one_based_claw(e: CliError) -> CliError {
    match e {
        CliError::Algorithm(connpart::error::Error::ClawWitnessFound(w)) => {
            CliError::Claw { center: w.center + 1, leaves: w.leaves.iter().map(|v| v + 1).collect() }
        }
        other => other,
    }
}

/// Runs one invocation and returns the text to emit: a JSON document, or a
/// graph file for `gen`.
pub fn run(cfg: &RunConfig) -> Result<String, CliError> {
    run_mode(cfg).map_err(one_based_claw)
}

fn run_mode(cfg: &RunConfig) -> Result<String, CliError> {
    let d = match cfg.mode {
        Mode::Gen => return run_gen(cfg),
        Mode::BcpMinMax => run_bcp(cfg, Objective::MinMax)?,
        Mode::BcpMaxMin => run_bcp(cfg, Objective::MaxMin)?,
        Mode::Bcep => run_bcep(cfg)?,
        Mode::GlLower | Mode::GlUpper | Mode::GlBoth | Mode::GlBalanced => run_gl(cfg)?,
        Mode::Oracle => run_oracle(cfg)?,
        Mode::Verify => run_verify(cfg)?,
    };
    let mut text = serde_json::to_string_pretty(&d).expect("serializable document");
    text.push('\n');
    Ok(text)
}

/// [`run`] plus output handling; returns the process exit code.
pub fn execute(cfg: &RunConfig) -> i32 {
    let result = run(cfg).and_then(|text| match &cfg.output {
        Some(path) => fs::write(path, &text).map_err(|source| CliError::Output { path: path.clone(), source }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Output { path: "<stdout>".into(), source }),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P3: &str = "# a path\np graph 3 2\nv 1 1\nv 2 2\nv 3 1\ne 1 2\ne 2 3 # tail\n";

    #[test]
    fn parses_a_path() {
        let f = parse_graph(P3).unwrap();
        assert_eq!(f.graph.n(), 3);
        assert_eq!(f.graph.weights(), &[1, 2, 1]);
        assert_eq!(f.edges, vec![(0, 1), (1, 2)]);
        assert_eq!(f.edge_weights, None);
    }

    #[test]
    fn parse_failures() {
        let too_many = "p graph 3 2\nv 1 1\nv 2 1\nv 3 1\ne 1 2\ne 2 3\ne 1 3\n";
        assert!(matches!(parse_graph(too_many), Err(ParseError::InconsistentHeader(_))));
        let zero = "p graph 1 0\nv 1 0\n";
        assert!(matches!(parse_graph(zero), Err(ParseError::Syntax { line: 2, .. })));
        assert!(matches!(parse_graph("v 1 1\n"), Err(ParseError::Syntax { line: 1, .. })));
        assert!(matches!(parse_graph("p graph 2 0\nv 1 1\n"), Err(ParseError::InconsistentHeader(_))));
        assert!(matches!(parse_graph("p graph 2 1\nv 1 1\nv 2 1\ne 1 3\n"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_graph("p graph 2 1\nv 1 1\nv 2 1\ne 1 1\n"), Err(ParseError::Graph(_))));
        let mixed = "p graph 3 2\nv 1 1\nv 2 1\nv 3 1\ne 1 2 4\ne 2 3\n";
        assert!(matches!(parse_graph(mixed), Err(ParseError::InconsistentHeader(_))));
    }

    #[test]
    fn edge_weights_follow_file_order() {
        let f = parse_graph("p graph 3 2\nv 1 1\nv 2 1\nv 3 1\ne 2 3 7\ne 1 2 5\n").unwrap();
        assert_eq!(f.edge_weights, Some(vec![7, 5]));
        assert_eq!(f.graph_order_weights(), Some(vec![5, 7]));
        assert_eq!(f.file_positions(), vec![1, 0]);
    }

    #[test]
    fn round_trip() {
        let f = parse_graph(P3).unwrap();
        assert_eq!(parse_graph(&write_graph(&f.graph)).unwrap().graph, f.graph);
    }

    #[test]
    fn exit_codes() {
        use connpart::error::Error;
        assert_eq!(CliError::Algorithm(Error::NotConnected).exit_code(), 1);
        assert_eq!(CliError::Algorithm(Error::InternalInvariantViolation(String::new())).exit_code(), 3);
        assert_eq!(CliError::Usage(String::new()).exit_code(), 2);
    }
}
