//! Edge-list text format, DOT export and JSON helpers.
//!
//! ```text
//! # comment
//! p dgr <n> <m>
//! a <u> <v>
//! ```

use std::collections::HashSet;
use std::fmt::Write;

use crate::colouring::{is_valid, Colouring};
use crate::digraph::{Digraph, Vertex};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_number(line: usize, tok: Option<&str>, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("{what} {tok:?} is not a non-negative integer")))
}

pub fn parse_edge_list(text: &str) -> Result<Digraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut arcs: Vec<(Vertex, Vertex)> = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let tag = toks.next().expect("non-empty line has a token");
        match (tag, header) {
            ("p", None) => {
                if toks.next() != Some("dgr") {
                    return Err(parse_err(line, "expected header \"p dgr <n> <m>\""));
                }
                let n = parse_number(line, toks.next(), "vertex count")?;
                let m = parse_number(line, toks.next(), "arc count")?;
                if n == 0 {
                    return Err(parse_err(line, "a digraph needs at least one vertex"));
                }
                header = Some((n, m));
            }
            ("p", Some(_)) => return Err(parse_err(line, "second header line")),
            (_, None) => return Err(parse_err(line, "arc before the \"p dgr\" header")),
            ("a", Some((n, _))) => {
                let u = parse_number(line, toks.next(), "tail")?;
                let v = parse_number(line, toks.next(), "head")?;
                for w in [u, v] {
                    if w >= n {
                        return Err(parse_err(line, format!("arc {u} -> {v}: vertex {w} out of range 0..{n}")));
                    }
                }
                if u == v {
                    return Err(parse_err(line, format!("loop {u} -> {v}")));
                }
                if !seen.insert((u, v)) {
                    return Err(parse_err(line, format!("duplicate arc {u} -> {v}")));
                }
                arcs.push((u, v));
            }
            (other, Some(_)) => return Err(parse_err(line, format!("unknown line type {other:?}"))),
        }
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(text.lines().count().max(1), "missing \"p dgr\" header"))?;
    if arcs.len() != m {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("header announces {m} arcs but {} were given", arcs.len()),
        ));
    }
    Digraph::from_arcs(n, arcs)
}

/// Header plus arcs sorted by tail, then head.
pub fn serialize_edge_list(g: &Digraph) -> String {
    let mut out = format!("p dgr {} {}\n", g.n(), g.arc_count());
    for (u, v) in g.arcs() {
        writeln!(out, "a {u} {v}").expect("writing to a String");
    }
    out
}

/// Fill colours for DOT output, cycled when a colouring uses more.
pub const PALETTE: [&str; 12] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33", "#a65628", "#f781bf", "#999999",
    "#66c2a5", "#fc8d62", "#8da0cb",
];

pub fn export_dot(g: &Digraph, col: Option<&Colouring>) -> Result<String> {
    if let Some(col) = col {
        if !is_valid(g, col)? {
            return Err(Error::InvalidColouring("colouring has a monochromatic cycle".into()));
        }
    }
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        match col {
            Some(col) => {
                let c = col.colour(v);
                let fill = PALETTE[(c as usize - 1) % PALETTE.len()];
                writeln!(out, "  {v} [label=\"{v}:{c}\", style=filled, fillcolor=\"{fill}\"];")
            }
            None => writeln!(out, "  {v};"),
        }
        .expect("writing to a String");
    }
    for (u, v) in g.arcs() {
        writeln!(out, "  {u} -> {v};").expect("writing to a String");
    }
    out.push_str("}\n");
    Ok(out)
}

pub fn colouring_to_json(col: &Colouring) -> String {
    serde_json::to_string(col).expect("colourings serialize")
}

pub fn colouring_from_json(text: &str) -> Result<Colouring> {
    serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))
}
