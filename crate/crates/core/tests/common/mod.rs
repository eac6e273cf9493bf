#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use isocrit::{Graph, Label};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// G(n, p) on labels `0..n`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> BTreeMap<Label, Label> {
    let mut images: Vec<Label> = (0..n).collect();
    images.shuffle(rng);
    images.into_iter().enumerate().collect()
}

/// Graphs on `1..=max_n` vertices with every edge drawn independently.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, keep)| *keep).map(|(e, _)| e).collect();
            Graph::from_edge_list(n, &edges).unwrap()
        })
    })
}

/// A graph together with a permutation of its labels.
pub fn arb_relabeled(max_n: usize) -> impl Strategy<Value = (Graph, BTreeMap<Label, Label>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        Just((0..n).collect::<Vec<Label>>())
            .prop_shuffle()
            .prop_map(move |images| (g.clone(), images.into_iter().enumerate().collect()))
    })
}

/// `N2(f(u)) = f(N1(u))` for every `u`.
pub fn preserves_neighborhoods(g1: &Graph, g2: &Graph, mapping: &[(Label, Label)]) -> bool {
    let f: BTreeMap<Label, Label> = mapping.iter().copied().collect();
    mapping.iter().all(|&(u, v)| {
        let image: BTreeSet<Label> = g1.neighborhood(u).unwrap().iter().map(|x| f[x]).collect();
        g2.neighborhood(v).map(|n| *n == image).unwrap_or(false)
    })
}
