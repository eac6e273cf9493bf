//! Brute-force ground truth for small graphs.
//!
//! One search engine serves both plain and anchored isomorphism: G1 labels are
//! assigned in ascending order, each to the G2 labels in ascending order, with
//! degree and edge-consistency pruning. Anchors simply pin positions.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};
use crate::invariants::{Criterion, CriterionValue, Payload, CANONICAL_FORM};

pub const DEFAULT_EXHAUSTIVE_CAP: usize = 10;
pub const DEFAULT_ANCHORED_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub exhaustive_cap: usize,
    pub anchored_cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            anchored_cap: DEFAULT_ANCHORED_CAP,
        }
    }
}

impl Oracle {
    /// First isomorphism in lexicographic order, as `(G1 label, G2 label)` pairs.
    pub fn exhaustive_isomorphic(&self, g1: &Graph, g2: &Graph) -> Result<Option<Vec<(Label, Label)>>> {
        check_cap(g1, g2, self.exhaustive_cap)?;
        Ok(Matcher::new(g1, g2).run(&BTreeMap::new()))
    }

    /// Whether some isomorphism `g1 -> g2` maps every anchor `u` to its `v`.
    pub fn anchored_isomorphic(&self, g1: &Graph, g2: &Graph, anchors: &[(Label, Label)]) -> Result<bool> {
        check_cap(g1, g2, self.anchored_cap)?;
        let mut pinned = BTreeMap::new();
        let mut images = BTreeSet::new();
        for &(u, v) in anchors {
            if !g1.contains(u) {
                return Err(Error::AnchorAbsent(u));
            }
            if !g2.contains(v) {
                return Err(Error::AnchorAbsent(v));
            }
            if pinned.insert(u, v).is_some() {
                return Err(Error::AnchorNotInjective(u));
            }
            if !images.insert(v) {
                return Err(Error::AnchorNotInjective(v));
            }
        }
        Ok(Matcher::new(g1, g2).run(&pinned).is_some())
    }

    /// Lexicographically least adjacency bit string over all vertex orderings.
    ///
    /// Bits are read column by column of the upper triangle, so the bits fixed
    /// by the first `k` chosen vertices form a prefix and partial orderings can
    /// be pruned against the best string found so far.
    pub fn canonical_form(&self, g: &Graph) -> Result<CriterionValue> {
        let n = g.order();
        if n > self.exhaustive_cap {
            return Err(Error::CapExceeded {
                order: n,
                cap: self.exhaustive_cap,
            });
        }
        let adj = bit_matrix(g);
        let mut search = Canonizer {
            adj: &adj,
            best: None,
            prefix: Vec::with_capacity(n * n.saturating_sub(1) / 2),
            order: Vec::with_capacity(n),
            used: vec![false; n],
        };
        search.descend(false);
        let bits: String = search
            .best
            .unwrap_or_default()
            .into_iter()
            .map(|b| if b { '1' } else { '0' })
            .collect();
        Ok(CriterionValue::new(CANONICAL_FORM, Payload::Bits { order: n, bits }))
    }
}

fn check_cap(g1: &Graph, g2: &Graph, cap: usize) -> Result<()> {
    let order = g1.order().max(g2.order());
    if order > cap {
        Err(Error::CapExceeded { order, cap })
    } else {
        Ok(())
    }
}

fn bit_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    let mut m = vec![vec![false; n]; n];
    for (i, ns) in g.positional_adjacency().into_iter().enumerate() {
        for j in ns {
            m[i][j] = true;
        }
    }
    m
}

/// Checks directly that `mapping` is a bijection `V(g1) -> V(g2)` that
/// preserves adjacency and non-adjacency.
pub fn is_isomorphism(g1: &Graph, g2: &Graph, mapping: &[(Label, Label)]) -> bool {
    if g1.order() != g2.order() || mapping.len() != g1.order() {
        return false;
    }
    let forward: BTreeMap<Label, Label> = mapping.iter().copied().collect();
    let image: BTreeSet<Label> = mapping.iter().map(|&(_, v)| v).collect();
    if forward.len() != mapping.len()
        || image.len() != mapping.len()
        || !forward.keys().all(|&u| g1.contains(u))
        || !image.iter().all(|&v| g2.contains(v))
    {
        return false;
    }
    for a in g1.labels() {
        for b in g1.labels() {
            if a < b && g1.is_adjacent(a, b) != g2.is_adjacent(forward[&a], forward[&b]) {
                return false;
            }
        }
    }
    true
}

struct Matcher {
    left: Vec<Label>,
    right: Vec<Label>,
    adj1: Vec<Vec<bool>>,
    adj2: Vec<Vec<bool>>,
    deg1: Vec<usize>,
    deg2: Vec<usize>,
    edges_equal: bool,
}

impl Matcher {
    fn new(g1: &Graph, g2: &Graph) -> Self {
        Matcher {
            left: g1.labels().collect(),
            right: g2.labels().collect(),
            adj1: bit_matrix(g1),
            adj2: bit_matrix(g2),
            deg1: g1.degrees().collect(),
            deg2: g2.degrees().collect(),
            edges_equal: g1.edge_count() == g2.edge_count(),
        }
    }

    fn run(&self, pinned: &BTreeMap<Label, Label>) -> Option<Vec<(Label, Label)>> {
        if self.left.len() != self.right.len() || !self.edges_equal {
            return None;
        }
        let n = self.left.len();
        let pos2: BTreeMap<Label, usize> = self.right.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let pins: Vec<Option<usize>> = self.left.iter().map(|u| pinned.get(u).map(|v| pos2[v])).collect();
        let mut reserved = vec![false; n];
        for &j in pins.iter().flatten() {
            reserved[j] = true;
        }
        let mut assignment = Vec::with_capacity(n);
        let mut used = vec![false; n];
        if self.extend(&pins, &reserved, &mut assignment, &mut used) {
            Some(
                assignment
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (self.left[i], self.right[j]))
                    .collect(),
            )
        } else {
            None
        }
    }

    fn feasible(&self, i: usize, j: usize, assignment: &[usize]) -> bool {
        self.deg1[i] == self.deg2[j]
            && assignment
                .iter()
                .enumerate()
                .all(|(k, &jk)| self.adj1[i][k] == self.adj2[j][jk])
    }

    fn extend(
        &self,
        pins: &[Option<usize>],
        reserved: &[bool],
        assignment: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let i = assignment.len();
        if i == self.left.len() {
            return true;
        }
        let candidates: Vec<usize> = match pins[i] {
            Some(j) => vec![j],
            None => (0..self.right.len()).filter(|&j| !used[j] && !reserved[j]).collect(),
        };
        for j in candidates {
            if used[j] || !self.feasible(i, j, assignment) {
                continue;
            }
            assignment.push(j);
            used[j] = true;
            if self.extend(pins, reserved, assignment, used) {
                return true;
            }
            assignment.pop();
            used[j] = false;
        }
        false
    }
}

struct Canonizer<'a> {
    adj: &'a [Vec<bool>],
    best: Option<Vec<bool>>,
    prefix: Vec<bool>,
    order: Vec<usize>,
    used: Vec<bool>,
}

impl Canonizer<'_> {
    /// `below` means the current prefix is already strictly less than `best`.
    fn descend(&mut self, below: bool) {
        let n = self.adj.len();
        if self.order.len() == n {
            if below || self.best.is_none() {
                self.best = Some(self.prefix.clone());
            }
            return;
        }
        for next in 0..n {
            if self.used[next] {
                continue;
            }
            let start = self.prefix.len();
            for k in 0..self.order.len() {
                self.prefix.push(self.adj[self.order[k]][next]);
            }
            let mut now_below = below;
            let mut prune = false;
            if !below {
                if let Some(best) = &self.best {
                    match self.prefix[start..].cmp(&best[start..self.prefix.len()]) {
                        std::cmp::Ordering::Less => now_below = true,
                        std::cmp::Ordering::Greater => prune = true,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            if !prune {
                self.used[next] = true;
                self.order.push(next);
                self.descend(now_below);
                self.order.pop();
                self.used[next] = false;
            }
            self.prefix.truncate(start);
        }
    }
}

/// The complete invariant `canonical_form`, wrapped as a [`Criterion`].
#[derive(Debug, Clone, Copy, Default)]
pub struct CanonicalForm {
    pub oracle: Oracle,
}

impl Criterion for CanonicalForm {
    fn name(&self) -> &str {
        CANONICAL_FORM
    }

    fn evaluate(&self, graph: &Graph) -> Result<CriterionValue> {
        self.oracle.canonical_form(graph)
    }
}
