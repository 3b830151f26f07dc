//! Graph files: the 1-indexed edge-list text format and 0-indexed JSON.
//!
//! ```text
//! c a triangle
//! p 3 3
//! e 1 2
//! e 2 3
//! e 1 3
//! ```
//!
//! JSON: `{"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}`.

use std::fmt::Write as _;

use nonrep_core::{Graph, GraphError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphParseError {
    #[error("line {line}: {kind}")]
    Line { line: usize, kind: LineError },
    #[error("missing \"p <n> <m>\" header")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCount { declared: usize, found: usize },
    #[error("invalid graph JSON: {0}")]
    Json(String),
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineError {
    #[error("malformed header")]
    MalformedHeader,
    #[error("second header")]
    DuplicateHeader,
    #[error("edge before the header")]
    EdgeBeforeHeader,
    #[error("malformed edge line")]
    MalformedEdge,
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge")]
    Loop,
    #[error("duplicate edge")]
    DuplicateEdge,
    #[error("unrecognised line")]
    Unrecognised,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Parses either format; input whose first non-blank character is `{` is
/// read as JSON.
pub fn parse_graph(text: &str) -> Result<Graph, GraphParseError> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_graph_text(text)
    }
}

pub fn parse_graph_text(text: &str) -> Result<Graph, GraphParseError> {
    let err = |line: usize, kind: LineError| GraphParseError::Line { line, kind };
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None => continue,
            Some(t) if t.starts_with('c') => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(err(line, LineError::DuplicateHeader));
                }
                let mut rest: Vec<&str> = tokens.collect();
                // DIMACS files often say "p edge n m"
                if rest.first().is_some_and(|t| t.parse::<usize>().is_err()) {
                    rest.remove(0);
                }
                let [n, m] = rest[..] else {
                    return Err(err(line, LineError::MalformedHeader));
                };
                match (n.parse(), m.parse()) {
                    (Ok(n), Ok(m)) => header = Some((n, m)),
                    _ => return Err(err(line, LineError::MalformedHeader)),
                }
            }
            Some("e") => {
                let Some((n, _)) = header else {
                    return Err(err(line, LineError::EdgeBeforeHeader));
                };
                let rest: Vec<&str> = tokens.collect();
                let [u, v] = rest[..] else {
                    return Err(err(line, LineError::MalformedEdge));
                };
                let (Ok(u), Ok(v)) = (u.parse::<usize>(), v.parse::<usize>()) else {
                    return Err(err(line, LineError::MalformedEdge));
                };
                for vertex in [u, v] {
                    if vertex == 0 || vertex > n {
                        return Err(err(line, LineError::VertexOutOfRange { vertex, n }));
                    }
                }
                if u == v {
                    return Err(err(line, LineError::Loop));
                }
                let e = (u.min(v) - 1, u.max(v) - 1);
                if !seen.insert(e) {
                    return Err(err(line, LineError::DuplicateEdge));
                }
                edges.push(e);
            }
            Some(_) => return Err(err(line, LineError::Unrecognised)),
        }
    }
    let (n, m) = header.ok_or(GraphParseError::MissingHeader)?;
    if edges.len() != m {
        return Err(GraphParseError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(Graph::from_edges(n, edges)?)
}

pub fn parse_graph_json(text: &str) -> Result<Graph, GraphParseError> {
    let parsed: GraphJson = serde_json::from_str(text).map_err(|e| GraphParseError::Json(e.to_string()))?;
    Ok(Graph::from_edges(parsed.n, parsed.edges)?)
}

pub fn graph_to_text(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).expect("writing to a String");
    }
    out
}

pub fn graph_to_json(g: &Graph) -> serde_json::Value {
    serde_json::json!({ "n": g.n(), "edges": g.edges().collect::<Vec<_>>() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_examples() {
        assert_eq!(parse_graph("p 2 1\ne 1 2\n").unwrap(), Graph::path(2));
        assert_eq!(parse_graph("c k3\np 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap(), Graph::complete(3));
        assert_eq!(parse_graph("p edge 3 0\n").unwrap(), Graph::empty(3));
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(
            parse_graph("p 2 1\ne 1 1\n"),
            Err(GraphParseError::Line { line: 2, kind: LineError::Loop })
        );
        assert_eq!(
            parse_graph("p 3 2\ne 1 2\n\ne 2 1\n"),
            Err(GraphParseError::Line { line: 4, kind: LineError::DuplicateEdge })
        );
        assert_eq!(
            parse_graph("p 2 1\ne 1 3\n"),
            Err(GraphParseError::Line { line: 2, kind: LineError::VertexOutOfRange { vertex: 3, n: 2 } })
        );
        assert_eq!(
            parse_graph("p 2\n"),
            Err(GraphParseError::Line { line: 1, kind: LineError::MalformedHeader })
        );
        assert_eq!(parse_graph("e 1 2\n"), Err(GraphParseError::Line { line: 1, kind: LineError::EdgeBeforeHeader }));
        assert_eq!(parse_graph("c nothing\n"), Err(GraphParseError::MissingHeader));
        assert_eq!(parse_graph("p 3 2\ne 1 2\n"), Err(GraphParseError::EdgeCount { declared: 2, found: 1 }));
    }

    #[test]
    fn json_is_zero_indexed() {
        assert_eq!(parse_graph(r#"{"n": 3, "edges": [[0, 2]]}"#).unwrap(), Graph::from_edges(3, [(0, 2)]).unwrap());
        assert!(matches!(parse_graph(r#"{"n": 2, "edges": [[0, 0]]}"#), Err(GraphParseError::Graph(_))));
        assert!(matches!(parse_graph(r#"{"n": 2}"#), Err(GraphParseError::Json(_))));
    }

    #[test]
    fn isolated_vertices_survive() {
        let g = parse_graph("p 5 1\ne 2 4\n").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(parse_graph(&graph_to_text(&g)).unwrap(), g);
        assert_eq!(parse_graph(&graph_to_json(&g).to_string()).unwrap(), g);
    }
}
