//! Whitespace-separated edge lists.
//!
//! Each data line is `u v` or `u v w`; lines starting with `#` or `%` are
//! comments. Node labels are non-negative integers and are remapped to
//! `0..n` in ascending label order.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use log::warn;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Internal id → original label.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdMap {
    labels: Vec<u64>,
}

impl IdMap {
    pub fn identity(n: usize) -> Self {
        Self {
            labels: (0..n as u64).collect(),
        }
    }

    pub fn from_labels(labels: Vec<u64>) -> Self {
        Self { labels }
    }

    pub fn label(&self, id: usize) -> u64 {
        self.labels[id]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Internal id for an original label.
    pub fn id_of(&self, label: u64) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Map `ids` (internal ids of a subgraph of `self`) back to labels.
    pub fn compose(&self, ids: &[usize]) -> IdMap {
        IdMap {
            labels: ids.iter().map(|&i| self.labels[i]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub ids: IdMap,
    /// Number of duplicate edges dropped (first occurrence kept).
    pub duplicates: usize,
}

struct RawEdge {
    line: usize,
    u: u64,
    v: u64,
    w: f64,
}

fn parse_label(tok: &str, line: usize) -> Result<u64> {
    tok.parse::<u64>().map_err(|_| Error::Parse {
        line,
        message: format!("node label {tok:?} is not a non-negative integer"),
    })
}

fn parse_edges(text: &str, weighted: bool) -> Result<Vec<RawEdge>> {
    let mut out = Vec::new();
    let mut ignored_column = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') || s.starts_with('%') {
            continue;
        }
        let toks: Vec<&str> = s.split_whitespace().collect();
        if toks.len() < 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected `u v [w]`, found {s:?}"),
            });
        }
        let u = parse_label(toks[0], line)?;
        let v = parse_label(toks[1], line)?;
        if u == v {
            return Err(Error::SelfLoop { line, node: u });
        }
        let w = match toks.get(2) {
            Some(tok) if weighted => {
                let w: f64 = tok.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("weight {tok:?} is not a number"),
                })?;
                if !(w > 0.0 && w.is_finite()) {
                    return Err(Error::NonPositiveWeight { line, weight: w });
                }
                w
            }
            Some(_) => {
                ignored_column = true;
                1.0
            }
            None => 1.0,
        };
        out.push(RawEdge { line, u, v, w });
    }
    if ignored_column {
        warn!("unweighted load: extra columns ignored");
    }
    Ok(out)
}

/// Parse edge-list text. See the module docs for the format.
pub fn parse_edge_list(text: &str, weighted: bool) -> Result<LoadedGraph> {
    let raw = parse_edges(text, weighted)?;
    let labels: BTreeSet<u64> = raw.iter().flat_map(|e| [e.u, e.v]).collect();
    if labels.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let labels: Vec<u64> = labels.into_iter().collect();
    let id = |l: u64| labels.binary_search(&l).expect("label collected above");

    let mut graph = Graph::empty(labels.len());
    let mut seen = HashSet::new();
    let mut duplicates = 0;
    for e in &raw {
        let (a, b) = (id(e.u), id(e.v));
        if !seen.insert((a.min(b), a.max(b))) {
            duplicates += 1;
            log::debug!("line {}: duplicate edge {} {} dropped", e.line, e.u, e.v);
            continue;
        }
        graph.add_edge(a, b, e.w)?;
    }
    if duplicates > 0 {
        warn!("{duplicates} duplicate edge(s) dropped; first occurrence kept");
    }
    Ok(LoadedGraph {
        graph,
        ids: IdMap::from_labels(labels),
        duplicates,
    })
}

pub fn load_edge_list(path: impl AsRef<Path>, weighted: bool) -> Result<LoadedGraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_edge_list(&text, weighted)
}

/// Render `g` with internal ids as labels; weights use the shortest
/// representation that parses back to the same `f64`.
pub fn format_edge_list(g: &Graph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# {} nodes, {} edges", g.node_count(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(s, "{} {} {}", e.u, e.v, e.w);
    }
    s
}

pub fn write_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, format_edge_list(g)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = parse_edge_list("1 2\n2 3\n1 3\n", false).unwrap();
        assert_eq!(g.graph.node_count(), 3);
        assert_eq!(g.graph.edge_count(), 3);
        assert!(g.graph.edges().iter().all(|e| e.w == 1.0));
        assert_eq!(g.ids.labels(), &[1, 2, 3]);
    }

    #[test]
    fn self_loop_rejected() {
        let err = parse_edge_list("0 0\n", false).unwrap_err();
        assert!(matches!(err, Error::SelfLoop { line: 1, node: 0 }));
    }

    #[test]
    fn comments_crlf_and_weights() {
        let text = "% konect header\r\n# comment\r\n\r\n5 7 2.5\r\n7 9 0.5\r\n";
        let g = parse_edge_list(text, true).unwrap();
        assert_eq!(g.graph.node_count(), 3);
        assert_eq!(g.graph.weight(0, 1), Some(2.5));
        assert_eq!(g.graph.weight(1, 2), Some(0.5));
        assert_eq!(g.ids.label(2), 9);
    }

    #[test]
    fn unweighted_ignores_extra_columns() {
        let g = parse_edge_list("1 2 7 1234567\n2 3 1 99\n", false).unwrap();
        assert!(g.graph.edges().iter().all(|e| e.w == 1.0));
    }

    #[test]
    fn duplicates_keep_first() {
        let g = parse_edge_list("1 2 3.0\n2 1 4.0\n1 2 5.0\n", true).unwrap();
        assert_eq!(g.graph.edge_count(), 1);
        assert_eq!(g.duplicates, 2);
        assert_eq!(g.graph.weight(0, 1), Some(3.0));
    }

    #[test]
    fn malformed_lines_report_line_number() {
        assert!(matches!(
            parse_edge_list("1 2\n3\n", false),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("1 2\nx 3\n", false),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("1 2 abc\n", true),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("1 2\n2 3 -1\n", true),
            Err(Error::NonPositiveWeight { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("1 2 0\n", true),
            Err(Error::NonPositiveWeight { line: 1, .. })
        ));
        assert!(matches!(parse_edge_list("# nothing\n", false), Err(Error::EmptyGraph)));
    }

    #[test]
    fn missing_file() {
        assert!(matches!(
            load_edge_list("/definitely/not/here.txt", false),
            Err(Error::Io { .. })
        ));
    }
}
