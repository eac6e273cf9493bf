//! Simple undirected graphs with stable vertex labels.
//!
//! Labels survive every subgraph operation: deleting vertex 3 from a graph on
//! `0..8` leaves the labels `{0, 1, 2, 4, 5, 6, 7}`, so edge checks against the
//! original graphs stay meaningful after any number of deletions. All iteration
//! is in ascending label order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

pub type Label = usize;
pub type LabelSet = BTreeSet<Label>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adjacency: BTreeMap<Label, LabelSet>,
}

impl Graph {
    /// Graph on the labels `0..n` with the given edges. Duplicates collapse.
    pub fn from_edge_list(n: usize, edges: &[(Label, Label)]) -> Result<Self> {
        for &(a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::LabelOutOfRange { label: x, order: n });
                }
            }
        }
        Self::with_labels(0..n, edges.iter().copied())
    }

    /// Graph on an arbitrary set of distinct labels.
    pub fn with_labels(
        labels: impl IntoIterator<Item = Label>,
        edges: impl IntoIterator<Item = (Label, Label)>,
    ) -> Result<Self> {
        let mut adjacency = BTreeMap::new();
        for label in labels {
            if adjacency.insert(label, LabelSet::new()).is_some() {
                return Err(Error::DuplicateLabel(label));
            }
        }
        let mut graph = Graph { adjacency };
        for (a, b) in edges {
            graph.add_edge(a, b)?;
        }
        Ok(graph)
    }

    fn add_edge(&mut self, a: Label, b: Label) -> Result<()> {
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        for x in [a, b] {
            if !self.adjacency.contains_key(&x) {
                return Err(Error::UnknownLabel(x));
            }
        }
        self.adjacency.get_mut(&a).unwrap().insert(b);
        self.adjacency.get_mut(&b).unwrap().insert(a);
        Ok(())
    }

    /// Recovers adjacency from a distance matrix: `(i, j)` is an edge iff the entry is 1.
    ///
    /// Entries other than 0/1 are not checked against shortest paths.
    pub fn from_distance_matrix(d: &IntMatrix) -> Result<Self> {
        let n = d.order();
        for i in 0..n {
            if d.get(i, i).to_i64() != Some(0) {
                return Err(Error::NonzeroDiagonal(i));
            }
        }
        if let Some((row, col)) = d.find_asymmetry() {
            return Err(Error::Asymmetric { row, col });
        }
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let entry = d.get(i, j);
                if entry.sign() == num_bigint::Sign::Minus {
                    return Err(Error::NegativeEntry { row: i, col: j });
                }
                if i < j && entry.to_i64() == Some(1) {
                    edges.push((i, j));
                }
            }
        }
        Self::from_edge_list(n, &edges)
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> impl ExactSizeIterator<Item = Label> + '_ {
        self.adjacency.keys().copied()
    }

    pub fn label_set(&self) -> LabelSet {
        self.labels().collect()
    }

    pub fn contains(&self, u: Label) -> bool {
        self.adjacency.contains_key(&u)
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        self.adjacency
            .iter()
            .flat_map(|(&a, ns)| ns.range(a + 1..).map(move |&b| (a, b)))
    }

    pub fn is_adjacent(&self, a: Label, b: Label) -> bool {
        self.adjacency.get(&a).is_some_and(|ns| ns.contains(&b))
    }

    fn check(&self, u: Label) -> Result<()> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(Error::UnknownLabel(u))
        }
    }

    fn check_all<'a>(&self, set: impl IntoIterator<Item = &'a Label>) -> Result<()> {
        set.into_iter().try_for_each(|&u| self.check(u))
    }

    pub fn neighborhood(&self, u: Label) -> Result<&LabelSet> {
        self.adjacency.get(&u).ok_or(Error::UnknownLabel(u))
    }

    pub fn closed_neighborhood(&self, u: Label) -> Result<LabelSet> {
        let mut set = self.neighborhood(u)?.clone();
        set.insert(u);
        Ok(set)
    }

    pub fn degree(&self, u: Label) -> Result<usize> {
        self.neighborhood(u).map(BTreeSet::len)
    }

    /// Degrees in ascending label order.
    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.values().map(BTreeSet::len)
    }

    /// Union of the neighborhoods of `set`, plus `set` itself when `closed`.
    pub fn set_neighborhood(&self, set: &LabelSet, closed: bool) -> Result<LabelSet> {
        self.check_all(set)?;
        let mut out: LabelSet = set.iter().flat_map(|u| self.adjacency[u].iter().copied()).collect();
        if closed {
            out.extend(set.iter().copied());
        }
        Ok(out)
    }

    pub fn delete_vertex(&self, u: Label) -> Result<Graph> {
        self.check(u)?;
        let mut adjacency = self.adjacency.clone();
        adjacency.remove(&u);
        for ns in adjacency.values_mut() {
            ns.remove(&u);
        }
        Ok(Graph { adjacency })
    }

    pub fn induced_subgraph(&self, set: &LabelSet) -> Result<Graph> {
        self.check_all(set)?;
        Ok(self.induced_unchecked(|u| set.contains(&u)))
    }

    /// The subgraph induced on every label outside `set`.
    pub fn remaining_subgraph(&self, set: &LabelSet) -> Result<Graph> {
        self.check_all(set)?;
        Ok(self.induced_unchecked(|u| !set.contains(&u)))
    }

    fn induced_unchecked(&self, keep: impl Fn(Label) -> bool) -> Graph {
        let adjacency = self
            .adjacency
            .iter()
            .filter(|(&u, _)| keep(u))
            .map(|(&u, ns)| (u, ns.iter().copied().filter(|&w| keep(w)).collect()))
            .collect();
        Graph { adjacency }
    }

    /// Image of the graph under an injective relabeling covering every label.
    pub fn relabeled(&self, mapping: &BTreeMap<Label, Label>) -> Result<Graph> {
        let image = |u: Label| mapping.get(&u).copied().ok_or(Error::UnknownLabel(u));
        let labels = self.labels().map(image).collect::<Result<Vec<_>>>()?;
        let edges = self
            .edges()
            .map(|(a, b)| Ok((image(a)?, image(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Graph::with_labels(labels, edges)
    }

    /// Neighbor lists by position (`labels()` order).
    pub(crate) fn positional_adjacency(&self) -> Vec<Vec<usize>> {
        let index: BTreeMap<Label, usize> = self.labels().enumerate().map(|(i, u)| (u, i)).collect();
        self.adjacency
            .values()
            .map(|ns| ns.iter().map(|w| index[w]).collect())
            .collect()
    }

    /// 0/1 adjacency matrix in ascending label order.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.order();
        let mut m = IntMatrix::zeros(n);
        for (i, ns) in self.positional_adjacency().into_iter().enumerate() {
            for j in ns {
                m.set(i, j, 1);
            }
        }
        m
    }

    /// Hop distances in ascending label order. Unreachable pairs get the
    /// sentinel `order()`, which exceeds every real distance.
    pub fn distance_matrix(&self) -> IntMatrix {
        let rows = self.distance_rows();
        IntMatrix::from_fn(self.order(), |i, j| rows[i][j] as u64)
    }

    pub(crate) fn distance_rows(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let adj = self.positional_adjacency();
        let mut rows = vec![vec![n; n]; n];
        let mut queue = VecDeque::new();
        for (source, row) in rows.iter_mut().enumerate() {
            row[source] = 0;
            queue.push_back(source);
            while let Some(x) = queue.pop_front() {
                let next = row[x] + 1;
                for &y in &adj[x] {
                    if row[y] == n && y != source {
                        row[y] = next;
                        queue.push_back(y);
                    }
                }
            }
        }
        rows
    }
}
