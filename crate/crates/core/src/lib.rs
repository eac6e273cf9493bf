//! Graph isomorphism testing driven by a pluggable graph invariant.
//!
//! A [`Criterion`] maps a graph to a comparable value. [`verify_criterion`]
//! greedily builds a mapping and reports a witness when the criterion fails to
//! separate the choices it must make; [`search_isomorphism`] is a complete
//! backtracking search pruned by the same criterion. [`oracle`] holds the
//! brute-force reference used in tests.

pub mod error;
pub mod fixtures;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod partition;
pub mod search;
pub mod verdict;
pub mod verifier;

pub use error::{Error, Result};
pub use graph::{Graph, Label, LabelSet};
pub use invariants::{criterion_by_name, Criterion, CriterionValue};
pub use search::{explain_prune, search_isomorphism, Prune, SearchOptions};
pub use verdict::{Outcome, Verdict};
pub use verifier::verify_criterion;
