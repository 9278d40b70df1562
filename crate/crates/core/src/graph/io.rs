//! Edge-list text format and DOT export.
//!
//! Format: a header line `n m`, then `m` lines `u v` with 0-based vertex
//! indices. Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str, allow_loops: bool) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, reason: "missing header".into() })?;
    let [n, m] = parse_pair(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let [u, v] = parse_pair(line, text)?;
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::EdgeCountMismatch { declared: m, found: edges.len() });
    }
    if allow_loops {
        Graph::with_loops(n, edges)
    } else {
        Graph::new(n, edges)
    }
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse { line, reason: format!("expected two integers, found {:?}", text) });
    }
    let mut out = [0; 2];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f
            .parse()
            .map_err(|_| Error::Parse { line, reason: format!("not a nonnegative integer: {f:?}") })?;
    }
    Ok(out)
}

pub fn serialize_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(s, "{u} {v}").expect("writing to a String cannot fail");
    }
    s
}

/// DOT rendering; `marked` vertices are drawn as filled triangles.
pub fn to_dot(g: &Graph, name: &str, marked: &[usize]) -> String {
    let mut s = format!("graph \"{}\" {{\n  node [shape=circle, width=0.15, label=\"\"];\n", name.replace('"', "'"));
    for v in 0..g.n() {
        if marked.contains(&v) {
            writeln!(s, "  {v} [shape=triangle, style=filled, fillcolor=red];").unwrap();
        } else {
            writeln!(s, "  {v};").unwrap();
        }
    }
    for &(u, v) in g.edges() {
        writeln!(s, "  {u} -- {v};").unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    #[test]
    fn parses_small_graphs() {
        let t = parse_edge_list("3 3\n0 1\n1 2\n2 0", false).unwrap();
        assert_eq!(t.m(), 3);
        assert_eq!(parse_edge_list("4 3\n0 1\n1 2\n2 3", false).unwrap(), generators::path(4));
    }

    #[test]
    fn distinct_errors() {
        assert_eq!(parse_edge_list("2 1\n0 0", false), Err(Error::LoopNotAllowed(0)));
        assert!(parse_edge_list("2 1\n0 0", true).is_ok());
        assert_eq!(parse_edge_list("2 1\n0 2", false), Err(Error::VertexOutOfRange { vertex: 2, n: 2 }));
        assert_eq!(parse_edge_list("3 2\n0 1\n1 0", false), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(parse_edge_list("3 2\n0 1", false), Err(Error::EdgeCountMismatch { declared: 2, found: 1 }));
        assert!(matches!(parse_edge_list("3 x", false), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("", false), Err(Error::Parse { .. })));
    }

    #[test]
    fn dot_mentions_every_edge() {
        let d = to_dot(&generators::path(3), "p", &[0, 2]);
        assert!(d.contains("0 -- 1;") && d.contains("1 -- 2;"));
        assert_eq!(d.matches("triangle").count(), 2);
    }
}
