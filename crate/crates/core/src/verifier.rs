//! Backtrack-free verification of a claimed sufficient-and-necessary criterion.
//!
//! Starting from `ζ(G1) = ζ(G2)`, the smallest remaining G1 vertex `u` is paired
//! with the first remaining G2 vertex `v` (ascending) such that the criterion
//! agrees on the two working graphs with `u` and `v` deleted and `u`'s edges to
//! the already-mapped vertices match `v`'s in the original graphs. Accepted
//! vertices leave the working graphs. If some `u` has no such `v`, the run
//! stops: a complete invariant never gets stuck this way on an isomorphic pair,
//! so the criterion is exposed. A completed run is only an isomorphism; it does
//! not certify the criterion.

use std::time::Instant;

use crate::error::Result;
use crate::graph::Graph;
use crate::invariants::Criterion;
use crate::verdict::{DeadEnd, NonIsomorphism, Outcome, PartialMapping, RejectReason, Rejection, SearchStats, Verdict};

pub fn verify_criterion(g1: &Graph, g2: &Graph, criterion: &dyn Criterion) -> Result<Verdict> {
    let started = Instant::now();
    let mut stats = SearchStats::default();
    let outcome = run(g1, g2, criterion, &mut stats)?;
    stats.elapsed = started.elapsed();
    Ok(Verdict {
        criterion: criterion.name().to_string(),
        outcome,
        stats,
    })
}

fn run(g1: &Graph, g2: &Graph, criterion: &dyn Criterion, stats: &mut SearchStats) -> Result<Outcome> {
    if g1.order() != g2.order() {
        return Ok(Outcome::NotIsomorphic {
            evidence: NonIsomorphism::OrderMismatch {
                left: g1.order(),
                right: g2.order(),
            },
        });
    }
    let (left, right) = (criterion.evaluate(g1)?, criterion.evaluate(g2)?);
    stats.zeta_evals += 2;
    if left != right {
        return Ok(Outcome::NotIsomorphic {
            evidence: NonIsomorphism::CriterionMismatch { left, right },
        });
    }

    let mut mapping = PartialMapping::new();
    let (mut work1, mut work2) = (g1.clone(), g2.clone());
    loop {
        let Some(u) = work1.labels().next() else {
            break;
        };
        let next1 = work1.delete_vertex(u)?;
        let left = criterion.evaluate(&next1)?;
        stats.zeta_evals += 1;

        let mut rejections = Vec::new();
        let mut accepted = None;
        for v in work2.labels() {
            stats.candidates += 1;
            let next2 = work2.delete_vertex(v)?;
            let right = criterion.evaluate(&next2)?;
            stats.zeta_evals += 1;
            let reason = if left != right {
                Some(RejectReason::CriterionMismatch {
                    left: left.clone(),
                    right,
                })
            } else {
                mapping.edge_conflict(g1, g2, u, v)
            };
            match reason {
                Some(reason) => {
                    stats.count_rejection(&reason);
                    rejections.push(Rejection { candidate: v, reason });
                }
                None => {
                    accepted = Some((v, next2));
                    break;
                }
            }
        }

        let Some((v, next2)) = accepted else {
            stats.dead_ends += 1;
            return Ok(Outcome::NotSufficientNecessary {
                witness: DeadEnd {
                    mapping: mapping.pairs().to_vec(),
                    vertex: u,
                    rejections,
                },
            });
        };
        mapping.push(u, v);
        work1 = next1;
        work2 = next2;
    }
    Ok(Outcome::Isomorphic {
        mapping: mapping.pairs().to_vec(),
    })
}
