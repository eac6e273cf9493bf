//! Backtracking isomorphism search with the subdivision filters.
//!
//! Vertices of G1 are taken smallest label first. Candidates in G2 are scanned
//! in ascending order, restricted to the aligned block of the subdivided
//! partition when pre-alignment is on, and must pass, in order:
//!
//! * step 8: the criterion agrees on the working graphs with `u` and `v` deleted;
//! * step 9: `u`'s edges into `Dom(f)` match `v`'s edges into `Ran(f)`;
//! * step 11: the criterion agrees on the pieces induced by `N*(Dom(f) + u)` and
//!   `N*(Ran(f) + v)`, and on what remains of each graph outside them;
//! * step 12: those induced pieces admit an isomorphism extending `f + (u, v)`.
//!
//! When every candidate fails, the latest pair is retracted. Each filter only
//! removes pairs that no isomorphism extending `f` could use, so the search is
//! complete. Step 12 is skipped for pieces above the size cap.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{Graph, Label, LabelSet};
use crate::invariants::{Criterion, CriterionValue};
use crate::oracle::{Oracle, DEFAULT_ANCHORED_CAP};
use crate::partition::{align_partitions, base_partition, subdivide_partition, Alignment};
use crate::verdict::{NonIsomorphism, Outcome, PartialMapping, RejectReason, SearchStats, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Use `N[S]` rather than `N(S)` for the step-11/12 pieces and the partition.
    pub closed_neighborhood: bool,
    /// Largest piece order for which step 12 runs.
    pub anchored_cap: usize,
    /// Restrict candidates to aligned blocks of the subdivided partitions.
    pub prealign: bool,
    pub time_budget: Option<Duration>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            closed_neighborhood: true,
            anchored_cap: DEFAULT_ANCHORED_CAP,
            prealign: true,
            time_budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prune {
    Accepted,
    Rejected(RejectReason),
}

pub fn search_isomorphism(
    g1: &Graph,
    g2: &Graph,
    criterion: &dyn Criterion,
    options: &SearchOptions,
) -> Result<Verdict> {
    let started = Instant::now();
    let mut search = Search::new(g1, g2, criterion, options, started);
    let outcome = search.run()?;
    let mut stats = search.stats;
    stats.elapsed = started.elapsed();
    Ok(Verdict {
        criterion: criterion.name().to_string(),
        outcome,
        stats,
    })
}

/// Runs the filter cascade for one candidate pair `(u, v)` given `f`.
pub fn explain_prune(
    g1: &Graph,
    g2: &Graph,
    criterion: &dyn Criterion,
    mapping: &[(Label, Label)],
    u: Label,
    v: Label,
    options: &SearchOptions,
) -> Result<Prune> {
    let f = PartialMapping::from_pairs(mapping)?;
    for &(x, y) in f.pairs() {
        if !g1.contains(x) {
            return Err(Error::UnknownLabel(x));
        }
        if !g2.contains(y) {
            return Err(Error::UnknownLabel(y));
        }
    }
    if !g1.contains(u) || f.is_mapped(u) {
        return Err(Error::InvalidMapping(format!("{u} is not an unmapped vertex of G1")));
    }
    if !g2.contains(v) || f.is_image(v) {
        return Err(Error::InvalidMapping(format!("{v} is not an unmapped vertex of G2")));
    }
    let mut search = Search::new(g1, g2, criterion, options, Instant::now());
    search.mapping = f;
    let work1 = g1.remaining_subgraph(&search.mapping.domain())?;
    let work2 = g2.remaining_subgraph(&search.mapping.range())?;
    let mut frame = search.frame(&work1, u)?;
    Ok(match search.check(&mut frame, &work2, v)? {
        Ok(_) => Prune::Accepted,
        Err(reason) => Prune::Rejected(reason),
    })
}

/// Values of the G1 side that stay fixed while candidates for `u` are scanned.
struct Frame {
    u: Label,
    deleted: Graph,
    deleted_value: CriterionValue,
    piece: Option<(LabelSet, CriterionValue, CriterionValue)>,
}

struct Search<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    criterion: &'a dyn Criterion,
    options: &'a SearchOptions,
    oracle: Oracle,
    deadline: Option<Instant>,
    /// Allowed G2 candidates per G1 vertex; `None` means unrestricted.
    allowed: Option<std::collections::BTreeMap<Label, Vec<Label>>>,
    mapping: PartialMapping,
    stats: SearchStats,
}

impl<'a> Search<'a> {
    fn new(
        g1: &'a Graph,
        g2: &'a Graph,
        criterion: &'a dyn Criterion,
        options: &'a SearchOptions,
        started: Instant,
    ) -> Self {
        Search {
            g1,
            g2,
            criterion,
            options,
            oracle: Oracle {
                anchored_cap: options.anchored_cap,
                ..Oracle::default()
            },
            deadline: options.time_budget.map(|b| started + b),
            allowed: None,
            mapping: PartialMapping::new(),
            stats: SearchStats::default(),
        }
    }

    fn evaluate(&mut self, graph: &Graph) -> Result<CriterionValue> {
        self.stats.zeta_evals += 1;
        self.criterion.evaluate(graph)
    }

    fn check_deadline(&self) -> Result<()> {
        match (self.deadline, self.options.time_budget) {
            (Some(deadline), Some(budget)) if Instant::now() > deadline => Err(Error::TimeBudgetExceeded(budget)),
            _ => Ok(()),
        }
    }

    fn run(&mut self) -> Result<Outcome> {
        let (g1, g2) = (self.g1, self.g2);
        if g1.order() != g2.order() {
            return Ok(Outcome::NotIsomorphic {
                evidence: NonIsomorphism::OrderMismatch {
                    left: g1.order(),
                    right: g2.order(),
                },
            });
        }
        let left = self.evaluate(g1)?;
        let right = self.evaluate(g2)?;
        if left != right {
            return Ok(Outcome::NotIsomorphic {
                evidence: NonIsomorphism::CriterionMismatch { left, right },
            });
        }

        if self.options.prealign {
            let closed = self.options.closed_neighborhood;
            let p1 = subdivide_partition(g1, &base_partition(g1, self.criterion)?, self.criterion, closed)?;
            self.check_deadline()?;
            let p2 = subdivide_partition(g2, &base_partition(g2, self.criterion)?, self.criterion, closed)?;
            self.stats.zeta_evals += 3 * (g1.order() + g2.order()) as u64;
            match align_partitions(&p1, &p2) {
                Alignment::Incompatible(detail) => {
                    return Ok(Outcome::NotIsomorphic {
                        evidence: NonIsomorphism::PartitionMismatch { detail },
                    })
                }
                Alignment::Aligned(pairs) => {
                    let allowed = pairs
                        .into_iter()
                        .flat_map(|p| {
                            let right = p.right;
                            p.left.into_iter().map(move |u| (u, right.clone()))
                        })
                        .collect();
                    self.allowed = Some(allowed);
                }
            }
        }

        if self.extend(g1, g2)? {
            Ok(Outcome::Isomorphic {
                mapping: self.mapping.pairs().to_vec(),
            })
        } else {
            Ok(Outcome::NotIsomorphic {
                evidence: NonIsomorphism::SearchExhausted,
            })
        }
    }

    fn frame(&mut self, work1: &Graph, u: Label) -> Result<Frame> {
        let deleted = work1.delete_vertex(u)?;
        let deleted_value = self.evaluate(&deleted)?;
        Ok(Frame {
            u,
            deleted,
            deleted_value,
            piece: None,
        })
    }

    /// `Ok(Ok(working G2 without v))` when `(u, v)` survives every filter.
    fn check(
        &mut self,
        frame: &mut Frame,
        work2: &Graph,
        v: Label,
    ) -> Result<std::result::Result<Graph, RejectReason>> {
        let (g1, g2) = (self.g1, self.g2);
        let closed = self.options.closed_neighborhood;
        let u = frame.u;

        let deleted2 = work2.delete_vertex(v)?;
        let right = self.evaluate(&deleted2)?;
        if right != frame.deleted_value {
            return Ok(Err(RejectReason::CriterionMismatch {
                left: frame.deleted_value.clone(),
                right,
            }));
        }

        if let Some(reason) = self.mapping.edge_conflict(g1, g2, u, v) {
            return Ok(Err(reason));
        }

        if frame.piece.is_none() {
            let mut seeds = self.mapping.domain();
            seeds.insert(u);
            let set = g1.set_neighborhood(&seeds, closed)?;
            let induced = self.evaluate(&g1.induced_subgraph(&set)?)?;
            let remaining = self.evaluate(&g1.remaining_subgraph(&set)?)?;
            frame.piece = Some((set, induced, remaining));
        }
        let (set1, induced1, remaining1) = frame.piece.clone().expect("filled above");
        let mut seeds = self.mapping.range();
        seeds.insert(v);
        let set2 = g2.set_neighborhood(&seeds, closed)?;
        let piece2 = g2.induced_subgraph(&set2)?;
        let induced2 = self.evaluate(&piece2)?;
        if induced2 != induced1 {
            return Ok(Err(RejectReason::InducedMismatch {
                left: induced1,
                right: induced2,
            }));
        }
        let remaining2 = self.evaluate(&g2.remaining_subgraph(&set2)?)?;
        if remaining2 != remaining1 {
            return Ok(Err(RejectReason::RemainingMismatch {
                left: remaining1,
                right: remaining2,
            }));
        }

        if set1.len() != set2.len() {
            return Ok(Err(RejectReason::AnchoredMismatch));
        }
        if set1.len() > self.options.anchored_cap {
            self.stats.anchored_skipped += 1;
            return Ok(Ok(deleted2));
        }
        // any isomorphism extending f maps N*(Dom) onto N*(Ran), so a pair
        // with exactly one end inside its piece rules the candidate out
        let mut anchors = Vec::with_capacity(self.mapping.len() + 1);
        for &(x, y) in self.mapping.pairs().iter().chain(std::iter::once(&(u, v))) {
            match (set1.contains(&x), set2.contains(&y)) {
                (true, true) => anchors.push((x, y)),
                (false, false) => {}
                _ => return Ok(Err(RejectReason::AnchoredMismatch)),
            }
        }
        self.stats.anchored_checks += 1;
        let piece1 = g1.induced_subgraph(&set1)?;
        if !self.oracle.anchored_isomorphic(&piece1, &piece2, &anchors)? {
            return Ok(Err(RejectReason::AnchoredMismatch));
        }
        Ok(Ok(deleted2))
    }

    fn extend(&mut self, work1: &Graph, work2: &Graph) -> Result<bool> {
        let Some(u) = work1.labels().next() else {
            return Ok(true);
        };
        let mut frame = self.frame(work1, u)?;
        let candidates: Vec<Label> = match &self.allowed {
            Some(allowed) => allowed[&u].iter().copied().filter(|&v| work2.contains(v)).collect(),
            None => work2.labels().collect(),
        };
        for v in candidates {
            self.check_deadline()?;
            self.stats.candidates += 1;
            let next2 = match self.check(&mut frame, work2, v)? {
                Ok(next2) => next2,
                Err(reason) => {
                    self.stats.count_rejection(&reason);
                    continue;
                }
            };
            self.mapping.push(u, v);
            let next1 = frame.deleted.clone();
            if self.extend(&next1, &next2)? {
                return Ok(true);
            }
            self.mapping.pop();
            self.stats.backtracks += 1;
        }
        self.stats.dead_ends += 1;
        Ok(false)
    }
}
