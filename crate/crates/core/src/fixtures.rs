//! Bundled graphs: the two 8-vertex distance matrices of the worked example
//! and the conference graphs P25.01 / P25.02 as adjacency lists.
//!
//! Vertex `k - 1` corresponds to the 1-indexed names `u_k` / `v_k` used when
//! reporting against the worked example.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::GraphFormat;

pub const EXAMPLE1_G1: &str = include_str!("../fixtures/example1-g1.dist");
pub const EXAMPLE1_G2: &str = include_str!("../fixtures/example1-g2.dist");
pub const P25_01: &str = include_str!("../fixtures/p25-01.adj");
pub const P25_02: &str = include_str!("../fixtures/p25-02.adj");

pub const ALL: [(&str, &str, GraphFormat); 4] = [
    ("example1-g1", EXAMPLE1_G1, GraphFormat::DistanceMatrix),
    ("example1-g2", EXAMPLE1_G2, GraphFormat::DistanceMatrix),
    ("p25-01", P25_01, GraphFormat::AdjacencyLists),
    ("p25-02", P25_02, GraphFormat::AdjacencyLists),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    ALL.iter().map(|(name, _, _)| *name)
}

pub fn fixture(name: &str) -> Result<Graph> {
    let (_, text, format) = ALL
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    format.parse(text)
}

pub fn example1_g1() -> Graph {
    fixture("example1-g1").expect("bundled fixture parses")
}

pub fn example1_g2() -> Graph {
    fixture("example1-g2").expect("bundled fixture parses")
}

pub fn p25_01() -> Graph {
    fixture("p25-01").expect("bundled fixture parses")
}

pub fn p25_02() -> Graph {
    fixture("p25-02").expect("bundled fixture parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads() {
        for name in names() {
            assert!(fixture(name).is_ok(), "{name}");
        }
        assert_eq!(fixture("p25-03"), Err(Error::UnknownFixture("p25-03".into())));
    }

    #[test]
    fn example1_g1_is_circulant() {
        let g = example1_g1();
        for (a, b) in g.edges() {
            assert!(matches!((b - a) % 8, 1 | 2 | 6 | 7));
        }
        assert_eq!(g.edge_count(), 16);
        assert_eq!(g.distance_matrix().to_string(), EXAMPLE1_G1);
    }
}
