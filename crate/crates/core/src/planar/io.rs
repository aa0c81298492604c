//! Line-based graph file format.
//!
//! ```text
//! planar <n> <m>
//! rot <v> <neighbours clockwise>
//! w <v> <weight>          (optional, default 1)
//! outer <tail> <head> [copy]   (optional)
//! ```
//!
//! A neighbour token is `u`, `u/c` for parallel copy `c`, and carries a
//! trailing `*` when the edge is virtual. Lines starting with `#` are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use super::{DartKey, EmbeddedPlanarGraph, EmbeddingError, RotationEntry, VertexId};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `planar <n> <m>` header")]
    MissingHeader,
    #[error("header declares {declared} edges, rotation has {actual}")]
    EdgeCount { declared: usize, actual: usize },
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| syntax(line, format!("bad {what} `{tok}`")))
}

fn neighbour(tok: &str, line: usize) -> Result<RotationEntry, ParseError> {
    let (body, is_virtual) = match tok.strip_suffix('*') {
        Some(b) => (b, true),
        None => (tok, false),
    };
    let (head, copy) = match body.split_once('/') {
        Some((h, c)) => (number(Some(h), line, "neighbour")?, number(Some(c), line, "copy")?),
        None => (number(Some(body), line, "neighbour")?, 0),
    };
    Ok(RotationEntry { head, copy, is_virtual })
}

pub fn parse_graph(text: &str) -> Result<EmbeddedPlanarGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut rotation: Vec<Option<Vec<RotationEntry>>> = Vec::new();
    let mut weights: Vec<i64> = Vec::new();
    let mut outer = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let mut toks = raw.split_whitespace();
        let tag = toks.next().unwrap_or_default();
        if tag != "planar" && header.is_none() {
            return Err(ParseError::MissingHeader);
        }
        match tag {
            "planar" => {
                if header.is_some() {
                    return Err(syntax(line, "duplicate header"));
                }
                let n: usize = number(toks.next(), line, "vertex count")?;
                let m: usize = number(toks.next(), line, "edge count")?;
                header = Some((n, m));
                rotation = vec![None; n];
                weights = vec![1; n];
            }
            "rot" => {
                let v: usize = number(toks.next(), line, "vertex")?;
                let slot = rotation.get_mut(v).ok_or_else(|| syntax(line, format!("vertex {v} out of range")))?;
                if slot.is_some() {
                    return Err(syntax(line, format!("duplicate rotation for {v}")));
                }
                *slot = Some(toks.map(|t| neighbour(t, line)).collect::<Result<_, _>>()?);
                continue;
            }
            "w" => {
                let v: usize = number(toks.next(), line, "vertex")?;
                let w: i64 = number(toks.next(), line, "weight")?;
                *weights.get_mut(v).ok_or_else(|| syntax(line, format!("vertex {v} out of range")))? = w;
            }
            "outer" => {
                let tail: VertexId = number(toks.next(), line, "tail")?;
                let head: VertexId = number(toks.next(), line, "head")?;
                let copy = match toks.next() {
                    Some(c) => number(Some(c), line, "copy")?,
                    None => 0,
                };
                outer = Some(DartKey::new(tail, head, copy));
            }
            other => return Err(syntax(line, format!("unknown record `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
    }
    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    let rotation: Vec<Vec<RotationEntry>> = rotation.into_iter().map(Option::unwrap_or_default).collect();
    let darts: usize = rotation.iter().map(Vec::len).sum();
    if darts != 2 * m {
        return Err(ParseError::EdgeCount { declared: m, actual: darts / 2 });
    }
    Ok(EmbeddedPlanarGraph::new(n, &rotation, &weights, outer)?)
}

pub fn write_graph(g: &EmbeddedPlanarGraph) -> String {
    let mut out = String::new();
    writeln!(out, "planar {} {}", g.n(), g.m()).unwrap();
    for v in 0..g.n() as VertexId {
        out.push_str("rot ");
        write!(out, "{v}").unwrap();
        for &d in g.rotation(v) {
            let dart = g.dart(d);
            write!(out, " {}", dart.head).unwrap();
            if dart.copy != 0 {
                write!(out, "/{}", dart.copy).unwrap();
            }
            if dart.is_virtual {
                out.push('*');
            }
        }
        out.push('\n');
    }
    for (v, &w) in g.weights().iter().enumerate() {
        if w != 1 {
            writeln!(out, "w {v} {w}").unwrap();
        }
    }
    let k = g.face_key(g.infinite_face());
    if k.copy == 0 {
        writeln!(out, "outer {} {}", k.tail, k.head).unwrap();
    } else {
        writeln!(out, "outer {} {} {}", k.tail, k.head, k.copy).unwrap();
    }
    out
}
