use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, Label, LabelSet};
use crate::invariants::CriterionValue;
use crate::partition::Incompatibility;

/// `(G1 label, G2 label)`
pub type Pair = (Label, Label);

/// An injective map `f` grown one pair at a time, in acceptance order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialMapping {
    pairs: Vec<Pair>,
    forward: BTreeMap<Label, Label>,
    backward: BTreeMap<Label, Label>,
}

impl PartialMapping {
    pub fn new() -> Self {
        Self::default()
    }

    /// Rejects pairs that would break injectivity in either direction.
    pub fn from_pairs(pairs: &[Pair]) -> Result<Self> {
        let mut mapping = Self::new();
        for &(u, v) in pairs {
            if mapping.forward.contains_key(&u) {
                return Err(Error::InvalidMapping(format!("{u} is mapped twice")));
            }
            if mapping.backward.contains_key(&v) {
                return Err(Error::InvalidMapping(format!("{v} is an image twice")));
            }
            mapping.push(u, v);
        }
        Ok(mapping)
    }

    pub(crate) fn push(&mut self, u: Label, v: Label) {
        debug_assert!(!self.forward.contains_key(&u) && !self.backward.contains_key(&v));
        self.pairs.push((u, v));
        self.forward.insert(u, v);
        self.backward.insert(v, u);
    }

    pub(crate) fn pop(&mut self) -> Option<Pair> {
        let (u, v) = self.pairs.pop()?;
        self.forward.remove(&u);
        self.backward.remove(&v);
        Some((u, v))
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, u: Label) -> Option<Label> {
        self.forward.get(&u).copied()
    }

    pub fn is_mapped(&self, u: Label) -> bool {
        self.forward.contains_key(&u)
    }

    pub fn is_image(&self, v: Label) -> bool {
        self.backward.contains_key(&v)
    }

    pub fn domain(&self) -> LabelSet {
        self.forward.keys().copied().collect()
    }

    pub fn range(&self) -> LabelSet {
        self.backward.keys().copied().collect()
    }

    /// First `x` in `Dom(f)` (acceptance order) with `(x, u) in E1` differing
    /// from `(f(x), v) in E2`, checked against the original graphs.
    pub fn edge_conflict(&self, g1: &Graph, g2: &Graph, u: Label, v: Label) -> Option<RejectReason> {
        self.pairs.iter().find_map(|&(x, fx)| {
            let first = g1.is_adjacent(x, u);
            (first != g2.is_adjacent(fx, v)).then_some(RejectReason::EdgeConflict {
                mapped: x,
                image: fx,
                edge_in_first: first,
            })
        })
    }

    pub fn is_edge_consistent(&self, g1: &Graph, g2: &Graph) -> bool {
        self.pairs.iter().enumerate().all(|(i, &(a, fa))| {
            self.pairs[..i]
                .iter()
                .all(|&(b, fb)| g1.is_adjacent(a, b) == g2.is_adjacent(fa, fb))
        })
    }
}

/// Why a candidate `v` was abandoned for `u`; the step numbers follow the
/// filter cascade (8: criterion on vertex-deleted working graphs, 9: edges
/// into the mapped vertices, 11: neighborhood pieces, 12: anchored check).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum RejectReason {
    CriterionMismatch {
        left: CriterionValue,
        right: CriterionValue,
    },
    EdgeConflict {
        mapped: Label,
        image: Label,
        edge_in_first: bool,
    },
    InducedMismatch {
        left: CriterionValue,
        right: CriterionValue,
    },
    RemainingMismatch {
        left: CriterionValue,
        right: CriterionValue,
    },
    /// The neighborhood pieces admit no isomorphism extending `f`.
    AnchoredMismatch,
}

impl RejectReason {
    pub fn step(&self) -> u8 {
        match self {
            RejectReason::CriterionMismatch { .. } => 8,
            RejectReason::EdgeConflict { .. } => 9,
            RejectReason::InducedMismatch { .. } | RejectReason::RemainingMismatch { .. } => 11,
            RejectReason::AnchoredMismatch => 12,
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::CriterionMismatch { left, right } => {
                write!(f, "step 8: criterion differs ({} vs {})", left.payload, right.payload)
            }
            RejectReason::EdgeConflict {
                mapped,
                image,
                edge_in_first,
            } => {
                let (a, b) = if *edge_in_first {
                    ("present", "absent")
                } else {
                    ("absent", "present")
                };
                write!(f, "step 9: edge {mapped}-u is {a} in G1 but {image}-v is {b} in G2")
            }
            RejectReason::InducedMismatch { left, right } => {
                write!(
                    f,
                    "step 11: induced pieces differ ({} vs {})",
                    left.payload, right.payload
                )
            }
            RejectReason::RemainingMismatch { left, right } => {
                write!(
                    f,
                    "step 11: remaining pieces differ ({} vs {})",
                    left.payload, right.payload
                )
            }
            RejectReason::AnchoredMismatch => {
                f.write_str("step 12: no isomorphism of the neighborhood pieces extends f")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub candidate: Label,
    pub reason: RejectReason,
}

/// A vertex of G1 for which every remaining G2 vertex was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeadEnd {
    pub mapping: Vec<Pair>,
    pub vertex: Label,
    pub rejections: Vec<Rejection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "evidence", rename_all = "kebab-case")]
pub enum NonIsomorphism {
    OrderMismatch {
        left: usize,
        right: usize,
    },
    CriterionMismatch {
        left: CriterionValue,
        right: CriterionValue,
    },
    PartitionMismatch {
        detail: Incompatibility,
    },
    /// Every branch of the backtracking search was exhausted.
    SearchExhausted,
}

impl fmt::Display for NonIsomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonIsomorphism::OrderMismatch { left, right } => write!(f, "orders differ ({left} vs {right})"),
            NonIsomorphism::CriterionMismatch { left, right } => {
                write!(f, "criterion differs ({} vs {})", left.payload, right.payload)
            }
            NonIsomorphism::PartitionMismatch { detail } => write!(f, "partitions incompatible: {detail}"),
            NonIsomorphism::SearchExhausted => f.write_str("search space exhausted"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Isomorphic {
        mapping: Vec<Pair>,
    },
    NotIsomorphic {
        evidence: NonIsomorphism,
    },
    /// Only possible when the criterion agreed on the whole graphs.
    NotSufficientNecessary {
        witness: DeadEnd,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Candidate pairs `(u, v)` examined.
    pub candidates: u64,
    pub zeta_evals: u64,
    pub dead_ends: u64,
    pub backtracks: u64,
    pub anchored_checks: u64,
    /// Step-12 checks skipped because the pieces exceeded the size cap.
    pub anchored_skipped: u64,
    /// Rejections per filter: steps 8, 9, 11, 12.
    pub rejected: [u64; 4],
    #[serde(serialize_with = "seconds")]
    pub elapsed: Duration,
}

fn seconds<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl SearchStats {
    pub(crate) fn count_rejection(&mut self, reason: &RejectReason) {
        let slot = match reason.step() {
            8 => 0,
            9 => 1,
            11 => 2,
            _ => 3,
        };
        self.rejected[slot] += 1;
    }

    /// Everything except wall-clock time.
    pub fn counters(&self) -> SearchStats {
        SearchStats {
            elapsed: Duration::ZERO,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub criterion: String,
    pub outcome: Outcome,
    pub stats: SearchStats,
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self.outcome {
            Outcome::Isomorphic { .. } => "ISOMORPHIC",
            Outcome::NotIsomorphic { .. } => "NOT-ISOMORPHIC",
            Outcome::NotSufficientNecessary { .. } => "NOT-SUFFICIENT-NECESSARY",
        }
    }

    pub fn mapping(&self) -> Option<&[Pair]> {
        match &self.outcome {
            Outcome::Isomorphic { mapping } => Some(mapping),
            _ => None,
        }
    }

    pub fn dead_end(&self) -> Option<&DeadEnd> {
        match &self.outcome {
            Outcome::NotSufficientNecessary { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn is_isomorphic(&self) -> bool {
        matches!(self.outcome, Outcome::Isomorphic { .. })
    }
}
