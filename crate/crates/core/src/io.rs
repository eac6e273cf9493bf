//! Text formats for graphs.
//!
//! * edge list: a header `n m`, then `m` lines `u v` with 0-based labels;
//! * distance matrix: `n` lines of `n` integers, adjacency where the entry is 1;
//! * adjacency lists: line `k` lists the neighbors of vertex `k` separated by
//!   commas or spaces, optionally ending in `;` or `.`.
//!
//! Writers emit labels by rank, so a graph whose labels are not `0..n` is
//! written compacted.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::str::FromStr;

use log::warn;

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    DistanceMatrix,
    AdjacencyLists,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edge-list" | "edges" => Ok(GraphFormat::EdgeList),
            "distance-matrix" | "dist" => Ok(GraphFormat::DistanceMatrix),
            "adjacency-lists" | "adj" => Ok(GraphFormat::AdjacencyLists),
            other => Err(format!("unknown graph format '{other}'")),
        }
    }
}

impl GraphFormat {
    /// Guesses the format: separators `,`/`;` mean adjacency lists, a square
    /// block with a zero diagonal means a distance matrix, anything else is an
    /// edge list.
    pub fn detect(text: &str) -> GraphFormat {
        if text.contains([',', ';']) {
            return GraphFormat::AdjacencyLists;
        }
        let rows: Vec<Vec<&str>> = content_lines(text)
            .map(|(_, l)| l.split_whitespace().collect())
            .collect();
        let square = !rows.is_empty()
            && rows.iter().all(|r| r.len() == rows.len())
            && rows.iter().enumerate().all(|(i, r)| r[i] == "0");
        if square {
            GraphFormat::DistanceMatrix
        } else {
            GraphFormat::EdgeList
        }
    }

    pub fn parse(self, text: &str) -> Result<Graph> {
        match self {
            GraphFormat::EdgeList => parse_edge_list(text),
            GraphFormat::DistanceMatrix => parse_distance_matrix(text),
            GraphFormat::AdjacencyLists => parse_adjacency_lists(text),
        }
    }

    pub fn write(self, graph: &Graph) -> String {
        match self {
            GraphFormat::EdgeList => write_edge_list(graph),
            GraphFormat::DistanceMatrix => write_distance_matrix(graph),
            GraphFormat::AdjacencyLists => write_adjacency_lists(graph),
        }
    }
}

/// Non-blank lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_number<T: FromStr>(token: &str, line: usize) -> Result<T> {
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected an integer, found '{token}'"),
    })
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing 'n m' header".into(),
    })?;
    let header: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = header[..] else {
        return Err(Error::Parse {
            line,
            message: "header must be 'n m'".into(),
        });
    };
    let n: usize = parse_number(n, line)?;
    let m: usize = parse_number(m, line)?;

    let mut seen = BTreeSet::new();
    let mut edges = Vec::with_capacity(m);
    let mut count = 0;
    for (line, body) in lines {
        count += 1;
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let [a, b] = tokens[..] else {
            return Err(Error::Parse {
                line,
                message: "edge line must be 'u v'".into(),
            });
        };
        let (a, b): (Label, Label) = (parse_number(a, line)?, parse_number(b, line)?);
        for x in [a, b] {
            if x >= n {
                return Err(Error::LabelOutOfRange { label: x, order: n });
            }
        }
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            warn!("line {line}: duplicate edge {a} {b} collapsed");
            continue;
        }
        edges.push((a, b));
    }
    if count != m {
        return Err(Error::Parse {
            line: 1,
            message: format!("header declares {m} edges but {count} were listed"),
        });
    }
    Graph::from_edge_list(n, &edges)
}

pub fn parse_distance_matrix(text: &str) -> Result<Graph> {
    let rows = content_lines(text)
        .map(|(line, body)| {
            body.split_whitespace()
                .map(|t| parse_number::<i64>(t, line))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Graph::from_distance_matrix(&IntMatrix::from_rows(rows)?)
}

pub fn parse_adjacency_lists(text: &str) -> Result<Graph> {
    let lines: Vec<&str> = text.lines().collect();
    let used = lines.iter().rposition(|l| !l.trim().is_empty()).map_or(0, |i| i + 1);
    let n = used;
    let mut rows: BTreeMap<Label, BTreeSet<Label>> = BTreeMap::new();
    for (k, raw) in lines[..used].iter().enumerate() {
        let line = k + 1;
        let body = raw.trim().trim_end_matches([';', '.']);
        let mut row = BTreeSet::new();
        for token in body.split([',', ' ', '\t']).filter(|t| !t.is_empty()) {
            let w: Label = parse_number(token, line)?;
            if w >= n {
                return Err(Error::LabelOutOfRange { label: w, order: n });
            }
            if w == k {
                return Err(Error::SelfLoop(k));
            }
            if !row.insert(w) {
                warn!("line {line}: neighbor {w} listed twice");
            }
        }
        rows.insert(k, row);
    }
    for (&u, row) in &rows {
        if let Some(&w) = row.iter().find(|w| !rows[w].contains(&u)) {
            return Err(Error::AsymmetricListing { from: u, to: w });
        }
    }
    let edges: Vec<(Label, Label)> = rows
        .iter()
        .flat_map(|(&u, row)| row.range(u + 1..).map(move |&w| (u, w)))
        .collect();
    Graph::from_edge_list(n, &edges)
}

fn rank(graph: &Graph) -> BTreeMap<Label, usize> {
    graph.labels().enumerate().map(|(i, u)| (u, i)).collect()
}

pub fn write_edge_list(graph: &Graph) -> String {
    let index = rank(graph);
    let mut out = format!("{} {}\n", graph.order(), graph.edge_count());
    for (a, b) in graph.edges() {
        let _ = writeln!(out, "{} {}", index[&a], index[&b]);
    }
    out
}

pub fn write_distance_matrix(graph: &Graph) -> String {
    graph.distance_matrix().to_string()
}

/// Comma-separated rows ending in `;`, the last one in `.`.
pub fn write_adjacency_lists(graph: &Graph) -> String {
    let index = rank(graph);
    let n = graph.order();
    let mut out = String::new();
    for (k, u) in graph.labels().enumerate() {
        let row: Vec<String> = graph
            .neighborhood(u)
            .expect("label from the graph")
            .iter()
            .map(|w| index[w].to_string())
            .collect();
        let end = if k + 1 == n { '.' } else { ';' };
        let _ = writeln!(out, "{}{}", row.join(", "), end);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn edge_list_examples() {
        let k2 = parse_edge_list("2 1\n0 1").unwrap();
        assert_eq!(k2, Graph::from_edge_list(2, &[(0, 1)]).unwrap());
        let empty = parse_edge_list("3 0").unwrap();
        assert_eq!((empty.order(), empty.edge_count()), (3, 0));
        assert_eq!(
            parse_edge_list("2 1\n0 2"),
            Err(Error::LabelOutOfRange { label: 2, order: 2 })
        );
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("2 1\n0 x"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(
            parse_edge_list("2 1\n0 1 1"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_edge_list("3 2\n0 1"), Err(Error::Parse { .. })));
        assert_eq!(parse_edge_list("2 1\n1 1"), Err(Error::SelfLoop(1)));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = parse_edge_list("3 3\n0 1\n1 0\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn distance_matrix_examples() {
        let g1 = parse_distance_matrix(fixtures::EXAMPLE1_G1).unwrap();
        assert_eq!(g1, fixtures::example1_g1());
        assert_eq!(
            g1.neighborhood(0).unwrap().iter().copied().collect::<Vec<_>>(),
            [1, 2, 6, 7]
        );
        assert_eq!(parse_distance_matrix("0 1\n1 1"), Err(Error::NonzeroDiagonal(1)));
        assert_eq!(
            parse_distance_matrix("0 1 2\n1 0"),
            Err(Error::NonSquare {
                row: 0,
                len: 3,
                order: 2
            })
        );
        assert_eq!(
            parse_distance_matrix("0 1\n2 0"),
            Err(Error::Asymmetric { row: 0, col: 1 })
        );
    }

    #[test]
    fn adjacency_list_examples() {
        let p1 = parse_adjacency_lists(fixtures::P25_01).unwrap();
        assert_eq!((p1.order(), p1.edge_count()), (25, 150));
        assert!(p1.degrees().all(|d| d == 12));
        let p2 = parse_adjacency_lists(fixtures::P25_02).unwrap();
        let rows1: Vec<&str> = fixtures::P25_01.lines().collect();
        let rows2: Vec<&str> = fixtures::P25_02.lines().collect();
        let first_diff = rows1.iter().zip(&rows2).position(|(a, b)| a != b);
        assert_eq!(first_diff, Some(8));
        assert!(rows1[8].starts_with("0, 3, 5, 7, 9, 11,"));
        assert!(rows2[8].starts_with("0, 3, 5, 7, 9, 12,"));
        assert_ne!(p1, p2);
    }

    #[test]
    fn adjacency_list_errors() {
        assert_eq!(
            parse_adjacency_lists("1;\n;\n"),
            Err(Error::AsymmetricListing { from: 0, to: 1 })
        );
        assert_eq!(
            parse_adjacency_lists("1;\n0, 2."),
            Err(Error::LabelOutOfRange { label: 2, order: 2 })
        );
        assert_eq!(parse_adjacency_lists("0;\n"), Err(Error::SelfLoop(0)));
        assert!(matches!(
            parse_adjacency_lists("1;\nz."),
            Err(Error::Parse { line: 2, .. })
        ));
        let isolated = parse_adjacency_lists("1;\n0;\n.\n").unwrap();
        assert_eq!((isolated.order(), isolated.edge_count()), (3, 1));
    }

    #[test]
    fn format_detection() {
        assert_eq!(GraphFormat::detect("2 1\n0 1"), GraphFormat::EdgeList);
        assert_eq!(GraphFormat::detect("3 0"), GraphFormat::EdgeList);
        assert_eq!(GraphFormat::detect("0 1\n1 0"), GraphFormat::DistanceMatrix);
        assert_eq!(GraphFormat::detect(fixtures::EXAMPLE1_G2), GraphFormat::DistanceMatrix);
        assert_eq!(GraphFormat::detect(fixtures::P25_02), GraphFormat::AdjacencyLists);
    }

    #[test]
    fn writers_reproduce_fixtures() {
        for (_, text, format) in fixtures::ALL {
            let graph = format.parse(text).unwrap();
            assert_eq!(format.write(&graph), *text);
        }
    }

    #[test]
    fn writers_compact_labels() {
        let g = Graph::with_labels([3, 8], [(3, 8)]).unwrap();
        assert_eq!(write_edge_list(&g), "2 1\n0 1\n");
        assert_eq!(write_adjacency_lists(&g), "1;\n0.\n");
    }
}
