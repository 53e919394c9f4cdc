//! Text serialization for boundaried graphs ("bkg v1").
//!
//! Line oriented: `n <count>`, optional `vertex <id...>` when ids are not the
//! contiguous range 0..n, optional `boundary <id...>`, zero or more
//! `set <name> <id...>` lines (one per annotation, in order), then `edge u v`
//! and `arc u v` lines. Blank lines and `#` comments are ignored. Parsing a
//! serialized graph reproduces it exactly, and re-serializing reproduces the
//! bytes.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Abg, Graph, VertexId};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_id(tok: &str, line: usize) -> Result<VertexId> {
    tok.parse::<VertexId>()
        .map_err(|_| parse_err(line, format!("expected vertex id, got {tok:?}")))
}

pub fn parse_bkg(text: &str) -> Result<Abg> {
    let mut n: Option<usize> = None;
    let mut universe: BTreeSet<VertexId> = BTreeSet::new();
    let mut explicit_vertices = false;
    let mut boundary: Option<BTreeSet<VertexId>> = None;
    let mut sets: Vec<(String, Vec<VertexId>, usize)> = Vec::new();
    let mut edges: Vec<(VertexId, VertexId, usize)> = Vec::new();
    let mut arcs: Vec<(VertexId, VertexId, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let kw = toks.next().unwrap();
        match kw {
            "n" => {
                if n.is_some() {
                    return Err(parse_err(lineno, "duplicate n line"));
                }
                let count = toks
                    .next()
                    .ok_or_else(|| parse_err(lineno, "n requires a count"))?
                    .parse::<usize>()
                    .map_err(|_| parse_err(lineno, "n requires a non-negative count"))?;
                if toks.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens after n"));
                }
                n = Some(count);
            }
            "vertex" => {
                explicit_vertices = true;
                for t in toks {
                    universe.insert(parse_id(t, lineno)?);
                }
            }
            "boundary" => {
                if boundary.is_some() {
                    return Err(parse_err(lineno, "duplicate boundary line"));
                }
                let mut b = BTreeSet::new();
                for t in toks {
                    b.insert(parse_id(t, lineno)?);
                }
                boundary = Some(b);
            }
            "set" => {
                let name = toks
                    .next()
                    .ok_or_else(|| parse_err(lineno, "set requires a name"))?
                    .to_string();
                if sets.iter().any(|(existing, _, _)| *existing == name) {
                    return Err(parse_err(lineno, format!("duplicate set name {name:?}")));
                }
                let mut ids = Vec::new();
                for t in toks {
                    ids.push(parse_id(t, lineno)?);
                }
                sets.push((name, ids, lineno));
            }
            "edge" | "arc" => {
                let u = parse_id(
                    toks.next()
                        .ok_or_else(|| parse_err(lineno, format!("{kw} requires two ids")))?,
                    lineno,
                )?;
                let v = parse_id(
                    toks.next()
                        .ok_or_else(|| parse_err(lineno, format!("{kw} requires two ids")))?,
                    lineno,
                )?;
                if toks.next().is_some() {
                    return Err(parse_err(lineno, format!("trailing tokens after {kw}")));
                }
                if u == v {
                    return Err(parse_err(lineno, format!("loop at vertex {u}")));
                }
                if kw == "edge" {
                    edges.push((u, v, lineno));
                } else {
                    arcs.push((u, v, lineno));
                }
            }
            other => {
                return Err(parse_err(lineno, format!("unknown directive {other:?}")));
            }
        }
    }

    let n = n.ok_or_else(|| parse_err(0, "missing n line"))?;
    if !explicit_vertices {
        universe.extend(0..n as VertexId);
    }
    if universe.len() != n {
        return Err(parse_err(
            0,
            format!("n is {n} but {} vertices are declared", universe.len()),
        ));
    }

    let mut graph = Graph::new();
    for &v in &universe {
        graph.add_vertex(v);
    }
    let check = |v: VertexId, line: usize| -> Result<()> {
        if universe.contains(&v) {
            Ok(())
        } else {
            Err(parse_err(line, format!("vertex {v} is not declared")))
        }
    };
    for (u, v, line) in edges {
        check(u, line)?;
        check(v, line)?;
        graph.add_edge(u, v);
    }
    for (u, v, line) in arcs {
        check(u, line)?;
        check(v, line)?;
        graph.add_arc(u, v);
    }
    let boundary = boundary.unwrap_or_default();
    for &v in &boundary {
        check(v, 0)?;
    }
    let mut abg = Abg::new(graph, boundary)?;
    for (name, ids, line) in sets {
        for &v in &ids {
            check(v, line)?;
        }
        abg = abg.with_annotation(&name, ids.into_iter().collect())?;
    }
    Ok(abg)
}

pub fn serialize_bkg(abg: &Abg) -> String {
    let mut out = String::new();
    let n = abg.graph.order();
    let _ = writeln!(out, "n {n}");
    let dense = abg
        .graph
        .vertices()
        .enumerate()
        .all(|(i, v)| v as usize == i);
    if !dense {
        out.push_str("vertex");
        for v in abg.graph.vertices() {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out.push_str("boundary");
    for v in &abg.boundary {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
    for a in &abg.annotations {
        let _ = write!(out, "set {}", a.name);
        for v in &a.set {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    for (u, v) in abg.graph.edge_list() {
        let _ = writeln!(out, "edge {u} {v}");
    }
    for (u, v) in abg.graph.arc_list() {
        let _ = writeln!(out, "arc {u} {v}");
    }
    out
}

/// Parses a whitespace-separated list of vertex ids (solution files).
/// `#` comments and blank lines are ignored.
pub fn parse_vertex_list(text: &str) -> Result<BTreeSet<VertexId>> {
    let mut out = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        for tok in line.split_whitespace() {
            out.insert(parse_id(tok, idx + 1)?);
        }
    }
    Ok(out)
}
