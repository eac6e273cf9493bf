//! Vertex partitions keyed by criterion signatures, the "induced subgraph +
//! remaining subgraph" subdivision, and search-space accounting.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};
use crate::invariants::{neighbor_degrees, per_vertex_signature, Criterion, CriterionValue, Payload};

/// The signature shared by every member of a block.
pub type BlockKey = Vec<CriterionValue>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub key: BlockKey,
    pub members: Vec<Label>,
}

impl Block {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Short stable digest of the key, for display.
    pub fn key_hash(&self) -> String {
        key_hash(&self.key)
    }
}

pub fn key_hash(key: &BlockKey) -> String {
    let mut hasher = Sha256::new();
    for value in key {
        hasher.update(value.to_string().as_bytes());
        hasher.update(b"\n");
    }
    hasher.finalize()[..6].iter().map(|b| format!("{b:02x}")).collect()
}

/// Blocks in ascending key order; keys are distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    blocks: Vec<Block>,
}

impl Partition {
    /// Groups labels by signature. Signatures are computed in parallel; the
    /// result does not depend on evaluation order.
    pub fn from_signatures<F>(labels: &[Label], signature: F) -> Result<Self>
    where
        F: Fn(Label) -> Result<BlockKey> + Sync,
    {
        let keys = labels
            .par_iter()
            .map(|&u| signature(u).map(|k| (k, u)))
            .collect::<Result<Vec<_>>>()?;
        let mut grouped: BTreeMap<BlockKey, Vec<Label>> = BTreeMap::new();
        for (key, u) in keys {
            grouped.entry(key).or_default().push(u);
        }
        let blocks = grouped
            .into_iter()
            .map(|(key, mut members)| {
                members.sort_unstable();
                Block { key, members }
            })
            .collect();
        Ok(Partition { blocks })
    }

    /// Plain label groups; each block is keyed by its smallest label.
    pub fn from_groups(groups: Vec<Vec<Label>>) -> Self {
        let mut blocks: Vec<Block> = groups
            .into_iter()
            .map(|mut members| {
                members.sort_unstable();
                let first = members.first().copied().unwrap_or_default() as u64;
                let key = vec![CriterionValue::new("group", Payload::Sequence(vec![first]))];
                Block { key, members }
            })
            .collect();
        blocks.sort_by(|a, b| a.key.cmp(&b.key));
        Partition { blocks }
    }

    /// Every vertex in one block (none for the empty graph).
    pub fn trivial(graph: &Graph) -> Self {
        let members: Vec<Label> = graph.labels().collect();
        let blocks = if members.is_empty() {
            Vec::new()
        } else {
            vec![Block {
                key: Vec::new(),
                members,
            }]
        };
        Partition { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, u: Label) -> Option<&Block> {
        self.blocks.iter().find(|b| b.members.binary_search(&u).is_ok())
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.blocks.iter().flat_map(|b| b.members.iter().copied()).collect()
    }

    /// Member sets only, in canonical order, for comparisons that ignore keys.
    pub fn groups(&self) -> BTreeSet<Vec<Label>> {
        self.blocks.iter().map(|b| b.members.clone()).collect()
    }

    /// Checks the four partition conditions against `V(graph)` and key distinctness.
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        let mut seen = BTreeSet::new();
        let mut keys = BTreeSet::new();
        for block in &self.blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if !keys.insert(&block.key) {
                return Err(Error::InvalidPartition("two blocks share a key".into()));
            }
            for &u in &block.members {
                if !graph.contains(u) {
                    return Err(Error::InvalidPartition(format!("{u} is not a vertex")));
                }
                if !seen.insert(u) {
                    return Err(Error::InvalidPartition(format!("{u} lies in two blocks")));
                }
            }
        }
        if seen.len() != graph.order() {
            return Err(Error::InvalidPartition("blocks do not cover every vertex".into()));
        }
        Ok(())
    }

    /// Product of the factorials of the block sizes.
    pub fn search_space_factor(&self) -> BigUint {
        self.blocks.iter().map(|b| factorial(b.len())).product()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in &self.blocks {
            let members: Vec<String> = block.members.iter().map(Label::to_string).collect();
            writeln!(f, "{}: {{{}}}", block.key_hash(), members.join(", "))?;
        }
        Ok(())
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).fold(BigUint::one(), |acc, k| acc * k)
}

/// Blocks of vertices whose vertex-deleted subgraphs agree under `criterion`.
pub fn base_partition(graph: &Graph, criterion: &dyn Criterion) -> Result<Partition> {
    let labels: Vec<Label> = graph.labels().collect();
    Partition::from_signatures(&labels, |u| Ok(vec![per_vertex_signature(graph, criterion, u)?]))
}

/// Splits every block of `base` by the criterion values of the subgraph
/// induced on `N[u]` (or `N(u)` when `closed` is false) and of the remaining
/// subgraph. The result always refines `base`.
pub fn subdivide_partition(
    graph: &Graph,
    base: &Partition,
    criterion: &dyn Criterion,
    closed: bool,
) -> Result<Partition> {
    base.validate(graph)?;
    let labels: Vec<Label> = graph.labels().collect();
    Partition::from_signatures(&labels, |u| {
        let mut key = base.block_of(u).expect("validated partition covers u").key.clone();
        let piece = if closed {
            graph.closed_neighborhood(u)?
        } else {
            graph.neighborhood(u)?.clone()
        };
        key.push(criterion.evaluate(&graph.induced_subgraph(&piece)?)?);
        key.push(criterion.evaluate(&graph.remaining_subgraph(&piece)?)?);
        Ok(key)
    })
}

/// Partition by vertex degree.
pub fn degree_partition(graph: &Graph) -> Result<Partition> {
    let labels: Vec<Label> = graph.labels().collect();
    Partition::from_signatures(&labels, |u| {
        let degree = graph.degree(u)? as u64;
        Ok(vec![CriterionValue::new("degree", Payload::Sequence(vec![degree]))])
    })
}

/// Partition by the sorted degrees of each vertex's neighbors.
pub fn adjacent_degree_partition(graph: &Graph) -> Result<Partition> {
    let labels: Vec<Label> = graph.labels().collect();
    Partition::from_signatures(&labels, |u| {
        let degrees = neighbor_degrees(graph, u)?;
        Ok(vec![CriterionValue::new(
            "neighbor-degrees",
            Payload::Sequence(degrees),
        )])
    })
}

/// Whether every block of `fine` lies inside some block of `coarse`.
pub fn refines(fine: &Partition, coarse: &Partition) -> Result<bool> {
    if fine.labels() != coarse.labels() {
        return Err(Error::MismatchedVertexSets);
    }
    let owner: BTreeMap<Label, usize> = coarse
        .blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.members.iter().map(move |&u| (u, i)))
        .collect();
    Ok(fine
        .blocks
        .iter()
        .all(|b| b.members.iter().all(|u| owner[u] == owner[&b.members[0]])))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockPair {
    pub key: BlockKey,
    pub left: Vec<Label>,
    pub right: Vec<Label>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Incompatibility {
    /// A key occurs in one partition only.
    MissingKey { key_hash: String, in_left: bool },
    SizeMismatch {
        key_hash: String,
        left: usize,
        right: usize,
    },
}

impl fmt::Display for Incompatibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Incompatibility::MissingKey { key_hash, in_left } => {
                let side = if *in_left { "first" } else { "second" };
                write!(f, "block {key_hash} occurs only in the {side} graph")
            }
            Incompatibility::SizeMismatch { key_hash, left, right } => {
                write!(f, "block {key_hash} has {left} vertices vs {right}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Alignment {
    Aligned(Vec<BlockPair>),
    /// The graphs cannot be isomorphic.
    Incompatible(Incompatibility),
}

/// Pairs blocks with equal keys.
pub fn align_partitions(p1: &Partition, p2: &Partition) -> Alignment {
    let right: BTreeMap<&BlockKey, &Block> = p2.blocks.iter().map(|b| (&b.key, b)).collect();
    let mut pairs = Vec::with_capacity(p1.len());
    for block in &p1.blocks {
        let Some(other) = right.get(&block.key) else {
            return Alignment::Incompatible(Incompatibility::MissingKey {
                key_hash: block.key_hash(),
                in_left: true,
            });
        };
        if block.len() != other.len() {
            return Alignment::Incompatible(Incompatibility::SizeMismatch {
                key_hash: block.key_hash(),
                left: block.len(),
                right: other.len(),
            });
        }
        pairs.push(BlockPair {
            key: block.key.clone(),
            left: block.members.clone(),
            right: other.members.clone(),
        });
    }
    if let Some(extra) = p2.blocks.iter().find(|b| !pairs.iter().any(|p| p.key == b.key)) {
        return Alignment::Incompatible(Incompatibility::MissingKey {
            key_hash: extra.key_hash(),
            in_left: false,
        });
    }
    Alignment::Aligned(pairs)
}

/// Number of bijections consistent with the alignment.
pub fn search_space_size(pairs: &[BlockPair]) -> Result<BigUint> {
    pairs.iter().try_fold(BigUint::one(), |acc, p| {
        if p.left.len() != p.right.len() {
            return Err(Error::UnequalPairSizes {
                left: p.left.len(),
                right: p.right.len(),
            });
        }
        Ok(acc * factorial(p.left.len()))
    })
}
