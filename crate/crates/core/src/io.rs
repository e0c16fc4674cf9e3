//! Readers and writers for the external text formats.
//!
//! Every format uses one-indexed ids; everything in memory is zero-indexed.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracles::cnf::CnfFormula;
use crate::oracles::graph::WeightedGraph;
use crate::oracles::influence::RrSetCollection;
use crate::oracles::logdet::GramMatrix;
use crate::reconfig::ReconfigSequence;
use crate::subset::Subset;

/// How the optional third column of an edge list is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbabilityMode {
    /// Third column is an edge weight (default 1); no probabilities.
    #[default]
    Weight,
    /// Third column is the activation probability of the arc.
    Given,
    /// `p(u, v) = 1 / indeg(v)`, after splitting undirected edges into arcs.
    InverseInDegree,
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn one_indexed(path: &Path, line: usize, tok: &str) -> Result<usize> {
    match tok.parse::<usize>() {
        Ok(0) => Err(parse_err(path, line, "vertex ids are one-indexed; found 0")),
        Ok(id) => Ok(id - 1),
        Err(_) => Err(parse_err(path, line, format!("bad vertex id `{tok}`"))),
    }
}

fn real(path: &Path, line: usize, tok: &str) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| parse_err(path, line, format!("bad number `{tok}`")))
}

/// Reads a whitespace-separated edge list (`u v [x]`).
///
/// Lines starting with `%` are comments. A comment of the form `% E N N`
/// (three integers) supplies the vertex count; otherwise it is the largest
/// id seen.
pub fn load_edge_list(path: &Path, directed: bool, mode: ProbabilityMode) -> Result<WeightedGraph> {
    parse_edge_list(&read_text(path)?, path, directed, mode)
}

pub fn parse_edge_list(
    text: &str,
    path: &Path,
    directed: bool,
    mode: ProbabilityMode,
) -> Result<WeightedGraph> {
    let mut header_n: Option<usize> = None;
    let mut rows: Vec<(usize, usize, usize, Option<f64>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('%') {
            let nums: Vec<usize> = comment
                .split_whitespace()
                .map_while(|t| t.parse().ok())
                .collect();
            if nums.len() == 3 && comment.split_whitespace().count() == 3 {
                header_n = Some(nums[1].max(nums[2]));
            }
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        if toks.len() < 2 {
            return Err(parse_err(path, line, "expected `u v [value]`"));
        }
        let u = one_indexed(path, line, toks[0])?;
        let v = one_indexed(path, line, toks[1])?;
        let x = toks.get(2).map(|t| real(path, line, t)).transpose()?;
        rows.push((line, u, v, x));
    }
    let max_id = rows.iter().map(|r| r.1.max(r.2) + 1).max();
    let n = match (header_n, max_id) {
        (Some(h), Some(m)) => h.max(m),
        (Some(h), None) => h,
        (None, Some(m)) => m,
        (None, None) => {
            return Err(parse_err(
                path,
                0,
                "empty edge list without a `% E N N` header; vertex count unknown",
            ))
        }
    };
    let mut g = WeightedGraph::new(n, directed || mode == ProbabilityMode::Given);
    for (line, u, v, x) in rows {
        let added = match mode {
            ProbabilityMode::Weight => g.add_edge(u, v, x.unwrap_or(1.0)),
            ProbabilityMode::Given => {
                let p = x.ok_or_else(|| parse_err(path, line, "missing edge probability"))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(parse_err(
                        path,
                        line,
                        format!("probability {p} outside [0, 1]"),
                    ));
                }
                if directed {
                    g.add_arc(u, v, p)
                } else {
                    g.add_arc(u, v, p).and_then(|_| g.add_arc(v, u, p))
                }
            }
            ProbabilityMode::InverseInDegree => g.add_edge(u, v, 1.0),
        };
        added.map_err(|e| parse_err(path, line, e.to_string()))?;
    }
    if mode == ProbabilityMode::InverseInDegree {
        g = g.with_inverse_in_degree();
    }
    Ok(g)
}

/// Reads a Gram matrix: `n` on the first line, then `n` rows of `n` reals.
pub fn load_gram(path: &Path) -> Result<GramMatrix> {
    parse_gram(&read_text(path)?, path)
}

pub fn parse_gram(text: &str, path: &Path) -> Result<GramMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%') && !l.starts_with('#'));
    let (line, first) = lines
        .next()
        .ok_or_else(|| parse_err(path, 0, "empty matrix file"))?;
    let n: usize = first.parse().map_err(|_| {
        parse_err(
            path,
            line,
            format!("expected the matrix size, got `{first}`"),
        )
    })?;
    let mut rows = Vec::with_capacity(n);
    for (line, l) in lines {
        let row = l
            .split_whitespace()
            .map(|t| real(path, line, t))
            .collect::<Result<Vec<f64>>>()?;
        if row.len() != n {
            return Err(parse_err(
                path,
                line,
                format!("expected {n} entries, got {}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(parse_err(
            path,
            0,
            format!("expected {n} rows, got {}", rows.len()),
        ));
    }
    GramMatrix::new(rows).map_err(|e| parse_err(path, 0, e.to_string()))
}

pub fn gram_to_string(a: &GramMatrix) -> String {
    let mut out = format!("{}\n", a.size());
    for row in a.rows().take(a.size()) {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Reads a DIMACS CNF file.
pub fn load_cnf(path: &Path) -> Result<CnfFormula> {
    parse_cnf(&read_text(path)?, path)
}

pub fn parse_cnf(text: &str, path: &Path) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('p') {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 3 || toks[0] != "cnf" {
                return Err(parse_err(path, line, "expected `p cnf <vars> <clauses>`"));
            }
            let vars = toks[1]
                .parse()
                .map_err(|_| parse_err(path, line, "bad variable count"))?;
            let count = toks[2]
                .parse()
                .map_err(|_| parse_err(path, line, "bad clause count"))?;
            header = Some((vars, count));
            continue;
        }
        let (vars, _) =
            header.ok_or_else(|| parse_err(path, line, "clause before the `p cnf` header"))?;
        for tok in trimmed.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| parse_err(path, line, format!("bad literal `{tok}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(parse_err(
                    path,
                    line,
                    format!("literal {lit} exceeds {vars} variables"),
                ));
            } else {
                current.push(lit);
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| parse_err(path, 0, "missing `p cnf` header"))?;
    if !current.is_empty() {
        return Err(parse_err(
            path,
            last_line,
            "last clause is not terminated by 0",
        ));
    }
    if clauses.len() != count {
        return Err(parse_err(
            path,
            0,
            format!("header declares {count} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::from_dimacs(vars, &clauses).map_err(|e| parse_err(path, 0, e.to_string()))
}

pub fn cnf_to_string(phi: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", phi.num_vars(), phi.num_clauses());
    for c in phi.clauses() {
        for l in c {
            let _ = write!(out, "{} ", l.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}

/// Writes an RR collection: a `% graph-digest` comment, the header
/// `n count seed`, then one set per line.
pub fn rr_to_string(rr: &RrSetCollection) -> String {
    let mut out = format!(
        "% graph-digest {}\n{} {} {}\n",
        rr.digest(),
        rr.universe_size(),
        rr.count(),
        rr.seed()
    );
    for s in rr.sets() {
        let ids: Vec<String> = s.iter().map(|v| (v + 1).to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

pub fn save_rr_sets(path: &Path, rr: &RrSetCollection) -> Result<()> {
    write_text(path, &rr_to_string(rr))
}

pub fn load_rr_sets(path: &Path) -> Result<RrSetCollection> {
    parse_rr_sets(&read_text(path)?, path)
}

pub fn parse_rr_sets(text: &str, path: &Path) -> Result<RrSetCollection> {
    let mut digest = String::new();
    let mut header: Option<(usize, usize, u64)> = None;
    let mut sets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if let Some(comment) = trimmed.strip_prefix('%') {
            if let Some(d) = comment.trim().strip_prefix("graph-digest") {
                digest = d.trim().to_string();
            }
            continue;
        }
        if trimmed.is_empty() && header.is_none() {
            continue;
        }
        match header {
            None => {
                let toks: Vec<&str> = trimmed.split_whitespace().collect();
                let parsed = match toks.as_slice() {
                    [n, c, s] => n.parse().ok().zip(c.parse().ok()).zip(s.parse().ok()),
                    _ => None,
                };
                let ((n, c), s) =
                    parsed.ok_or_else(|| parse_err(path, line, "expected `n count seed`"))?;
                header = Some((n, c, s));
            }
            Some((n, _, _)) => {
                let mut s = Subset::empty(n);
                for tok in trimmed.split_whitespace() {
                    let v = one_indexed(path, line, tok)?;
                    s.try_insert(v)
                        .map_err(|e| parse_err(path, line, e.to_string()))?;
                }
                sets.push(s);
            }
        }
    }
    let (n, count, seed) =
        header.ok_or_else(|| parse_err(path, 0, "missing `n count seed` header"))?;
    if sets.len() != count {
        return Err(parse_err(
            path,
            0,
            format!("header declares {count} sets, found {}", sets.len()),
        ));
    }
    RrSetCollection::from_parts(n, sets, seed, digest)
        .map_err(|e| parse_err(path, 0, e.to_string()))
}

/// Reads a sequence from a CSV with a `set` column of one-indexed sets, as
/// written by the experiment report. Other columns are ignored.
pub fn parse_sequence_csv(text: &str, path: &Path, n: usize) -> Result<ReconfigSequence> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| parse_err(path, 1, e.to_string()))?
        .clone();
    let column = headers
        .iter()
        .position(|h| h.trim() == "set")
        .ok_or_else(|| parse_err(path, 1, "missing `set` column"))?;
    let mut steps = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| parse_err(path, line, e.to_string()))?;
        let field = record
            .get(column)
            .ok_or_else(|| parse_err(path, line, "short row"))?;
        steps.push(
            Subset::parse_with_offset(n, field, 1)
                .map_err(|e| parse_err(path, line, e.to_string()))?,
        );
    }
    ReconfigSequence::new(steps).map_err(|e| parse_err(path, 0, e.to_string()))
}

pub fn load_sequence_csv(path: &Path, n: usize) -> Result<ReconfigSequence> {
    parse_sequence_csv(&read_text(path)?, path, n)
}

/// Resolves `file` against the directory of `base` unless it is absolute.
pub fn resolve_relative(base: Option<&Path>, file: &Path) -> PathBuf {
    match base {
        Some(dir) if file.is_relative() => dir.join(file),
        _ => file.to_path_buf(),
    }
}
