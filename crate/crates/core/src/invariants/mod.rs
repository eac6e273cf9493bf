//! Isomorphism criteria: functions from graphs to canonically comparable values.
//!
//! A [`Criterion`] is registered by name so the verifier and the search never
//! depend on a particular invariant. The four built-ins are all isomorphism
//! invariants; `canonical-form` (see [`crate::oracle`]) is the one complete
//! invariant, usable only at brute-force scale.

mod polynomial;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};
use crate::oracle::CanonicalForm;

pub use polynomial::{char_poly, Polynomial};

pub const DEGREE_SEQUENCE: &str = "degree-seq";
pub const ADJACENT_DEGREE_SEQUENCES: &str = "adj-degree-seq";
pub const ADJACENCY_CHAR_POLY: &str = "adj-charpoly";
pub const DISTANCE_CHAR_POLY: &str = "dist-charpoly";
pub const CANONICAL_FORM: &str = "canonical-form";

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Payload {
    /// Sorted ascending.
    Sequence(Vec<u64>),
    /// Inner lists sorted ascending, outer list sorted lexicographically.
    Multiset(Vec<Vec<u64>>),
    Polynomial(Polynomial),
    /// Upper-triangle adjacency bits of a canonical vertex ordering.
    Bits {
        order: usize,
        bits: String,
    },
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(xs: &[u64]) -> String {
            xs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
        }
        match self {
            Payload::Sequence(xs) => f.write_str(&join(xs)),
            Payload::Multiset(lists) => {
                let parts: Vec<String> = lists.iter().map(|l| format!("[{}]", join(l))).collect();
                f.write_str(&parts.join(" "))
            }
            Payload::Polynomial(p) => write!(f, "{p}"),
            Payload::Bits { order, bits } => write!(f, "{order}:{bits}"),
        }
    }
}

/// Value of a criterion on one graph. Equal iff the tags and payloads are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CriterionValue {
    pub tag: String,
    pub payload: Payload,
}

impl CriterionValue {
    pub fn new(tag: impl Into<String>, payload: Payload) -> Self {
        CriterionValue {
            tag: tag.into(),
            payload,
        }
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        match &self.payload {
            Payload::Polynomial(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for CriterionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.tag, self.payload)
    }
}

/// A named function `Graph -> CriterionValue`.
///
/// Implementations must be isomorphism invariant; the verifier and search rely
/// on it for soundness. Evaluation is fallible only for resource caps.
pub trait Criterion: Send + Sync {
    fn name(&self) -> &str;

    fn evaluate(&self, graph: &Graph) -> Result<CriterionValue>;
}

impl fmt::Debug for dyn Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Criterion({})", self.name())
    }
}

pub fn degree_sequence(graph: &Graph) -> CriterionValue {
    let mut degrees: Vec<u64> = graph.degrees().map(|d| d as u64).collect();
    degrees.sort_unstable();
    CriterionValue::new(DEGREE_SEQUENCE, Payload::Sequence(degrees))
}

/// Sorted neighbor degrees of one vertex.
pub fn neighbor_degrees(graph: &Graph, u: Label) -> Result<Vec<u64>> {
    let mut degrees = graph
        .neighborhood(u)?
        .iter()
        .map(|&w| graph.degree(w).map(|d| d as u64))
        .collect::<Result<Vec<_>>>()?;
    degrees.sort_unstable();
    Ok(degrees)
}

pub fn adjacent_degree_sequences(graph: &Graph) -> CriterionValue {
    let mut lists: Vec<Vec<u64>> = graph
        .labels()
        .map(|u| neighbor_degrees(graph, u).expect("label from the graph"))
        .collect();
    lists.sort();
    CriterionValue::new(ADJACENT_DEGREE_SEQUENCES, Payload::Multiset(lists))
}

pub fn adjacency_char_poly(graph: &Graph) -> CriterionValue {
    let p = char_poly(&graph.adjacency_matrix());
    CriterionValue::new(ADJACENCY_CHAR_POLY, Payload::Polynomial(p))
}

pub fn distance_char_poly(graph: &Graph) -> CriterionValue {
    let p = char_poly(&graph.distance_matrix());
    CriterionValue::new(DISTANCE_CHAR_POLY, Payload::Polynomial(p))
}

macro_rules! builtin {
    ($ty:ident, $name:expr, $f:path) => {
        #[derive(Debug, Clone, Copy, Default)]
        pub struct $ty;

        impl Criterion for $ty {
            fn name(&self) -> &str {
                $name
            }

            fn evaluate(&self, graph: &Graph) -> Result<CriterionValue> {
                Ok($f(graph))
            }
        }
    };
}

builtin!(DegreeSequence, DEGREE_SEQUENCE, degree_sequence);
builtin!(
    AdjacentDegreeSequences,
    ADJACENT_DEGREE_SEQUENCES,
    adjacent_degree_sequences
);
builtin!(AdjacencyCharPoly, ADJACENCY_CHAR_POLY, adjacency_char_poly);
builtin!(DistanceCharPoly, DISTANCE_CHAR_POLY, distance_char_poly);

pub fn builtin_criteria() -> Vec<Arc<dyn Criterion>> {
    vec![
        Arc::new(DegreeSequence),
        Arc::new(AdjacentDegreeSequences),
        Arc::new(AdjacencyCharPoly),
        Arc::new(DistanceCharPoly),
    ]
}

/// Looks up a built-in criterion, or `canonical-form` with the default cap.
pub fn criterion_by_name(name: &str) -> Result<Arc<dyn Criterion>> {
    if name == CANONICAL_FORM {
        return Ok(Arc::new(CanonicalForm::default()));
    }
    builtin_criteria()
        .into_iter()
        .find(|c| c.name() == name)
        .ok_or_else(|| Error::UnknownCriterion(name.to_string()))
}

pub fn criterion_names() -> Vec<&'static str> {
    vec![
        DEGREE_SEQUENCE,
        ADJACENT_DEGREE_SEQUENCES,
        ADJACENCY_CHAR_POLY,
        DISTANCE_CHAR_POLY,
        CANONICAL_FORM,
    ]
}

/// `c(G - u)`.
pub fn per_vertex_signature(graph: &Graph, criterion: &dyn Criterion, u: Label) -> Result<CriterionValue> {
    criterion.evaluate(&graph.delete_vertex(u)?)
}
