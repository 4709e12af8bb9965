//! Plain-text graph and forest files.
//!
//! A graph file starts with `n m`, then `m` lines `u v` with ids in `0..n`,
//! then optionally one `rot u: n1 n2 ... nk` line per vertex giving its
//! neighbor order. Without rotation lines an embedding is computed. Blank
//! lines and `#` comments are ignored. A forest file lists one id per line.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use crate::graph::{GraphError, PlanarGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line: line + 1, msg: msg.into() }
}

fn content(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn id(line: usize, s: &str) -> Result<VertexId, ParseError> {
    s.parse().map_err(|_| syntax(line, format!("bad vertex id {s:?}")))
}

pub fn parse_graph(text: &str) -> Result<PlanarGraph, ParseError> {
    let mut lines = content(text);
    let (hl, header) = lines.next().ok_or_else(|| syntax(0, "empty graph file"))?;
    let mut h = header.split_whitespace();
    let n: usize = h.next().and_then(|x| x.parse().ok()).ok_or_else(|| syntax(hl, "expected `n m`"))?;
    let m: usize = h.next().and_then(|x| x.parse().ok()).ok_or_else(|| syntax(hl, "expected `n m`"))?;
    if h.next().is_some() {
        return Err(syntax(hl, "expected `n m`"));
    }
    let mut edges = Vec::with_capacity(m);
    let mut rot: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for (i, l) in lines {
        if let Some(rest) = l.strip_prefix("rot") {
            let (v, nb) = rest.split_once(':').ok_or_else(|| syntax(i, "expected `rot u: ...`"))?;
            let v = id(i, v.trim())?;
            let nb = nb.split_whitespace().map(|x| id(i, x)).collect::<Result<Vec<_>, _>>()?;
            if rot.insert(v, nb).is_some() {
                return Err(syntax(i, format!("second rotation for {v}")));
            }
        } else {
            if !rot.is_empty() {
                return Err(syntax(i, "edge line after rotation lines"));
            }
            let w: Vec<&str> = l.split_whitespace().collect();
            if w.len() != 2 {
                return Err(syntax(i, "expected `u v`"));
            }
            edges.push((id(i, w[0])?, id(i, w[1])?));
        }
    }
    if edges.len() != m {
        return Err(syntax(hl, format!("header says {m} edges, found {}", edges.len())));
    }
    let g = PlanarGraph::from_edges(n, &edges)?;
    if rot.is_empty() {
        return Ok(g);
    }
    if rot.len() != n {
        return Err(syntax(hl, format!("rotations given for {} of {n} vertices", rot.len())));
    }
    Ok(g.with_rotations(&rot)?)
}

/// Writes the graph with its rotations, when it has an embedding. Ids must
/// be exactly `0..n`.
pub fn write_graph(g: &PlanarGraph) -> Result<String, GraphError> {
    // ids are listed in increasing order, so the first gap is a missing id
    if let Some((i, _)) = g.vertices().enumerate().find(|&(i, v)| v as usize != i) {
        return Err(GraphError::UnknownVertex(i as VertexId));
    }
    let mut s = String::new();
    let edges = g.edges();
    let _ = writeln!(s, "{} {}", g.n(), edges.len());
    for (u, v) in &edges {
        let _ = writeln!(s, "{u} {v}");
    }
    if g.is_embedded() {
        for v in g.vertices() {
            let nb: Vec<String> = g.neighbors(v).iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "rot {v}: {}", nb.join(" "));
        }
    }
    Ok(s)
}

pub fn parse_forest(text: &str) -> Result<BTreeSet<VertexId>, ParseError> {
    let mut out = BTreeSet::new();
    for (i, l) in content(text) {
        if !out.insert(id(i, l)?) {
            return Err(syntax(i, format!("vertex {l} listed twice")));
        }
    }
    Ok(out)
}

pub fn write_forest(f: &BTreeSet<VertexId>) -> String {
    let mut s = String::new();
    for v in f {
        let _ = writeln!(s, "{v}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn round_trip_keeps_embedding() {
        for g in [gen::cube(), gen::t6(), gen::grid(3, 4), gen::hexgrid(2)] {
            let text = write_graph(&g).unwrap();
            let h = parse_graph(&text).unwrap();
            assert_eq!(h.rotations(), g.rotations());
            assert_eq!(h.digest(), g.digest());
        }
    }

    #[test]
    fn edges_only_file() {
        let g = parse_graph("4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!((g.n(), g.m()), (4, 4));
        assert!(!g.is_embedded());
    }

    #[test]
    fn malformed_files() {
        assert!(matches!(parse_graph(""), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_graph("2 1\n0 5\n"), Err(ParseError::Graph(GraphError::UnknownVertex(5)))));
        assert!(matches!(parse_graph("2 1\n0 1\nrot 0: 1\n"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_forest("1\n1\n"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn forest_file() {
        let f = parse_forest("# kept\n3\n0\n\n7\n").unwrap();
        assert_eq!(f.into_iter().collect::<Vec<_>>(), [0, 3, 7]);
        assert_eq!(write_forest(&[2, 5].into_iter().collect()), "2\n5\n");
    }
}
