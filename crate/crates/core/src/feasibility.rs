//! Feasibility of completing a pattern to rank at most `n - k`.
//!
//! * `k = 1`: an exact test. A preservable basis is a set of `n-1` columns
//!   whose relaxed pattern has generic rank `n-1`. The problem is feasible
//!   iff some preservable basis passes a per-column test. That test is
//!   phrased with row-deleted generic ranks, so the complementary row family
//!   is never materialized.
//! * general `k`: a sufficient condition (dual-matroid rank equality per
//!   non-basis column) and a necessary condition (every `n-k+1` rows must be
//!   completable to rank `n-k`, decided by the exact `k = 1` test).
//!
//! Row and column numbers stored in evidence and counterexamples are 1-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::{generic_rank, row_deleted_ranks, QueryMode};
use crate::pattern::{ColumnSet, EntryKind, PatternMatrix, RowSet, StandingAssumption};
use crate::sampler::{binomial, derive_seed, BasisSampler};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Feasible,
    Infeasible,
    SufficientHolds,
    NecessaryFails,
    Unknown,
}

impl Status {
    /// The verdict certifies a completion of the requested rank.
    pub fn is_feasible(self) -> bool {
        matches!(self, Status::Feasible | Status::SufficientHolds)
    }

    /// The verdict certifies that no completion of the requested rank exists.
    pub fn is_infeasible(self) -> bool {
        matches!(self, Status::Infeasible | Status::NecessaryFails)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColumnEvidence {
    /// No `*` of the column sits in a row whose deletion keeps the basis rank.
    NoStarInCoBasis { column: usize },
    /// Some `?` of the column sits in such a row.
    QueryInCoBasis { column: usize, row: usize },
    /// The `?` rows alone reach the maximum overlap `rho`.
    OverlapReached { column: usize, rho: usize },
}

impl ColumnEvidence {
    pub fn column(&self) -> usize {
        match *self {
            ColumnEvidence::NoStarInCoBasis { column }
            | ColumnEvidence::QueryInCoBasis { column, .. }
            | ColumnEvidence::OverlapReached { column, .. } => column,
        }
    }
}

/// Whether the basis columns were already free of `?` entries, or needed
/// their `?` entries relaxed to `*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisForm {
    QueryFree,
    Relaxed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub basis: ColumnSet,
    pub form: BasisForm,
    pub evidence: Vec<ColumnEvidence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Counterexample {
    /// No candidate basis reaches the required generic rank.
    NoPreservableBasis,
    /// First basis tried and the column that defeated it. `row` is the
    /// offending `*` row when one exists.
    Column {
        basis: ColumnSet,
        column: usize,
        row: Option<usize>,
    },
    /// Row subset whose rank-deficiency-one subproblem is infeasible.
    Rows {
        rows: RowSet,
        detail: Option<Box<Counterexample>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityVerdict {
    pub status: Status,
    pub k: usize,
    /// Decided by the standing assumption failing (completion is immediate).
    pub trivial: bool,
    /// Every candidate was examined, so negative answers are exact.
    pub exhaustive: bool,
    pub witness: Option<Witness>,
    pub counterexample: Option<Counterexample>,
    /// Necessary-condition runs only: `Some(true)` when every row subset was
    /// examined and decided feasible.
    pub necessary_holds: Option<bool>,
    pub trials_used: usize,
    pub rng_seed: u64,
    pub notes: Vec<String>,
}

impl FeasibilityVerdict {
    fn new(status: Status, k: usize, seed: u64) -> Self {
        FeasibilityVerdict {
            status,
            k,
            trivial: false,
            exhaustive: false,
            witness: None,
            counterexample: None,
            necessary_holds: None,
            trials_used: 0,
            rng_seed: seed,
            notes: Vec::new(),
        }
    }

    fn trivial(k: usize, seed: u64, assumption: &StandingAssumption) -> Self {
        let mut v = Self::new(Status::Feasible, k, seed);
        v.trivial = true;
        v.exhaustive = true;
        v.notes.push(assumption.diagnostic());
        v
    }
}

/// Result of the per-column test for a `k = 1` basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionCheck {
    Satisfied(Vec<ColumnEvidence>),
    /// 1-based column, and the `*` row in the co-basis that breaks it.
    Violated {
        column: usize,
        row: usize,
    },
}

/// Per-column outcome of the general-`k` overlap test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OverlapCondition {
    pub holds: bool,
    pub rho: usize,
}

/// `Some(trivial verdict)` when the completion is immediate; tall patterns
/// are refused rather than transposed, so witness columns keep their meaning.
fn screen(m: &PatternMatrix, k: usize, seed: u64) -> Result<Option<FeasibilityVerdict>> {
    let assumption = m.standing_assumption(k)?;
    if !assumption.wide {
        return Err(Error::PatternNotWide {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok((!assumption.holds()).then(|| FeasibilityVerdict::trivial(k, seed, &assumption)))
}

fn check_k(m: &PatternMatrix, k: usize) -> Result<()> {
    if k == 0 || k > m.rows() {
        return Err(Error::InvalidK { k, n: m.rows() });
    }
    Ok(())
}

/// True iff `basis` has `n-k` columns on which the hat pattern has generic
/// rank `n-k`.
pub fn is_preservable_basis(m: &PatternMatrix, basis: &ColumnSet, k: usize) -> Result<bool> {
    check_k(m, k)?;
    let target = m.rows() - k;
    if basis.len() != target {
        return Err(Error::WrongBasisSize {
            expected: target,
            found: basis.len(),
        });
    }
    basis.check_bound(m.cols())?;
    Ok(generic_rank(m, &RowSet::full(m.rows()), basis, QueryMode::AsStar)? == target)
}

/// Column conditions for a preservable basis at `k = 1`, evaluated on
/// `M(basis)`. Row `j` is in the co-basis iff deleting it keeps
/// `grank(M(basis)[:, basis]) = n - 1`.
pub fn k1_column_conditions(m: &PatternMatrix, basis: &ColumnSet) -> Result<ConditionCheck> {
    if !is_preservable_basis(m, basis, 1)? {
        return Err(Error::NotAPreservableBasis {
            basis: basis.to_string(),
        });
    }
    let relaxed = m.with_basis_columns(basis)?;
    let ranks = row_deleted_ranks(&relaxed, basis, QueryMode::Reject)?;
    let target = m.rows() - 1;
    let in_co_basis: Vec<bool> = ranks.without.iter().map(|&r| r == target).collect();
    Ok(column_conditions(&relaxed, basis, &in_co_basis))
}

fn column_conditions(
    relaxed: &PatternMatrix,
    basis: &ColumnSet,
    in_co_basis: &[bool],
) -> ConditionCheck {
    let mut evidence = Vec::new();
    for col in basis.complement(relaxed.cols()).iter() {
        let star_hit = relaxed.star_rows(col).iter().find(|&j| in_co_basis[j]);
        let Some(star_row) = star_hit else {
            evidence.push(ColumnEvidence::NoStarInCoBasis { column: col + 1 });
            continue;
        };
        match relaxed.query_rows(col).iter().find(|&j| in_co_basis[j]) {
            Some(row) => evidence.push(ColumnEvidence::QueryInCoBasis {
                column: col + 1,
                row: row + 1,
            }),
            None => {
                return ConditionCheck::Violated {
                    column: col + 1,
                    row: star_row + 1,
                }
            }
        }
    }
    ConditionCheck::Satisfied(evidence)
}

/// Recomputes a `k = 1` witness from scratch, with one full matching per
/// deleted row instead of the incremental search.
pub fn verify_k1_witness(m: &PatternMatrix, basis: &ColumnSet) -> Result<bool> {
    if basis.len() + 1 != m.rows() || !is_preservable_basis(m, basis, 1)? {
        return Ok(false);
    }
    let relaxed = m.with_basis_columns(basis)?;
    let n = m.rows();
    let mut in_co_basis = Vec::with_capacity(n);
    for j in 0..n {
        let rows = RowSet::full(n).without(j);
        in_co_basis.push(generic_rank(&relaxed, &rows, basis, QueryMode::Reject)? == n - 1);
    }
    Ok(matches!(
        column_conditions(&relaxed, basis, &in_co_basis),
        ConditionCheck::Satisfied(_)
    ))
}

/// Exact (exhaustive sampler) or one-sided randomized test of completability
/// to rank `n - 1`.
///
/// Randomized runs answer `Unknown` when no sampled basis passes, unless the
/// draws happened to cover every basis.
pub fn decide_k1(m: &PatternMatrix, sampler: &BasisSampler) -> Result<FeasibilityVerdict> {
    if let Some(v) = screen(m, 1, sampler.seed)? {
        return Ok(v);
    }
    let mut draws = sampler.draws(m.cols(), m.rows() - 1);
    let mut first_failure: Option<Counterexample> = None;
    for draw in draws.by_ref() {
        if !draw.fresh || !is_preservable_basis(m, &draw.set, 1)? {
            continue;
        }
        match k1_column_conditions(m, &draw.set)? {
            ConditionCheck::Satisfied(evidence) => {
                assert!(
                    verify_k1_witness(m, &draw.set)?,
                    "k=1 witness {} failed re-verification",
                    draw.set
                );
                let form = basis_form(m, &draw.set);
                let mut v = FeasibilityVerdict::new(Status::Feasible, 1, sampler.seed);
                v.exhaustive = sampler.is_exhaustive();
                v.witness = Some(Witness {
                    basis: draw.set,
                    form,
                    evidence,
                });
                v.trials_used = 0;
                v.trials_used = draws.drawn();
                return Ok(v);
            }
            ConditionCheck::Violated { column, row } => {
                first_failure.get_or_insert(Counterexample::Column {
                    basis: draw.set,
                    column,
                    row: Some(row),
                });
            }
        }
    }
    let complete = draws.covered_all();
    let mut v = FeasibilityVerdict::new(
        if complete {
            Status::Infeasible
        } else {
            Status::Unknown
        },
        1,
        sampler.seed,
    );
    v.exhaustive = complete;
    v.trials_used = draws.drawn();
    v.counterexample = Some(first_failure.unwrap_or(Counterexample::NoPreservableBasis));
    Ok(v)
}

fn basis_form(m: &PatternMatrix, basis: &ColumnSet) -> BasisForm {
    match m.has_query_in(&RowSet::full(m.rows()), basis) {
        Some(_) => BasisForm::Relaxed,
        None => BasisForm::QueryFree,
    }
}

/// Overlap test for non-basis column `col` of a pattern whose basis columns
/// hold no `?` and have generic rank `|basis|`.
///
/// With `N = N_{*i} ∪ N_{?i}`, the maximum overlap of a co-basis member with
/// a row set `S` equals `|S| + grank(M[J \ S, basis]) - grank(M[:, basis])`
/// (rank in the dual row matroid). The condition holds iff the `?` rows alone
/// reach the overlap of all of `N`.
pub fn overlap_condition(
    relaxed: &PatternMatrix,
    basis: &ColumnSet,
    col: usize,
) -> Result<OverlapCondition> {
    basis.check_bound(relaxed.cols())?;
    if col >= relaxed.cols() {
        return Err(Error::IndexOutOfRange {
            index: col + 1,
            bound: relaxed.cols(),
        });
    }
    if basis.contains(col) {
        return Err(Error::PreconditionViolated(format!(
            "column {} is part of the basis",
            col + 1
        )));
    }
    let n = relaxed.rows();
    let all = RowSet::full(n);
    if let Some((r, c)) = relaxed.has_query_in(&all, basis) {
        return Err(Error::PreconditionViolated(format!(
            "basis entry ({}, {}) is '?'",
            r + 1,
            c + 1
        )));
    }
    let base = generic_rank(relaxed, &all, basis, QueryMode::Reject)?;
    if base != basis.len() {
        return Err(Error::PreconditionViolated(format!(
            "basis {} has generic rank {base}, expected {}",
            basis,
            basis.len()
        )));
    }
    let dual_rank = |rows: &RowSet| -> Result<usize> {
        let rest = rows.complement(n);
        Ok(rows.len() + generic_rank(relaxed, &rest, basis, QueryMode::Reject)? - base)
    };
    let query_overlap = dual_rank(&relaxed.query_rows(col))?;
    let rho = dual_rank(&relaxed.support_rows(col))?;
    Ok(OverlapCondition {
        holds: query_overlap == rho,
        rho,
    })
}

/// Sufficient condition for completability to rank `n - k`: some `k`-order
/// preservable basis whose relaxed pattern passes the overlap test on every
/// other column. Never answers `Infeasible`.
pub fn sufficient_condition(
    m: &PatternMatrix,
    k: usize,
    sampler: &BasisSampler,
) -> Result<FeasibilityVerdict> {
    check_k(m, k)?;
    if let Some(v) = screen(m, k, sampler.seed)? {
        return Ok(v);
    }
    let mut draws = sampler.draws(m.cols(), m.rows() - k);
    let mut first_failure = None;
    let mut refutation = None;
    'bases: for draw in draws.by_ref() {
        if !draw.fresh || !is_preservable_basis(m, &draw.set, k)? {
            continue;
        }
        let relaxed = m.with_basis_columns(&draw.set)?;
        let form = basis_form(m, &draw.set);
        let mut evidence = Vec::new();
        for col in draw.set.complement(m.cols()).iter() {
            let cond = overlap_condition(&relaxed, &draw.set, col)?;
            if !cond.holds {
                if form == BasisForm::QueryFree && refutation.is_none() {
                    refutation = Some((draw.set.clone(), col + 1));
                }
                first_failure.get_or_insert(Counterexample::Column {
                    basis: draw.set.clone(),
                    column: col + 1,
                    row: None,
                });
                continue 'bases;
            }
            evidence.push(ColumnEvidence::OverlapReached {
                column: col + 1,
                rho: cond.rho,
            });
        }
        let mut v = FeasibilityVerdict::new(Status::SufficientHolds, k, sampler.seed);
        v.exhaustive = sampler.is_exhaustive();
        v.trials_used = draws.drawn();
        v.notes.push(match form {
            BasisForm::QueryFree => "fired on a basis without missing entries".to_string(),
            BasisForm::Relaxed => "fired on a basis with relaxed missing entries".to_string(),
        });
        v.witness = Some(Witness {
            basis: draw.set,
            form,
            evidence,
        });
        return Ok(v);
    }
    let mut v = FeasibilityVerdict::new(Status::Unknown, k, sampler.seed);
    v.exhaustive = draws.covered_all();
    v.trials_used = draws.drawn();
    v.counterexample = Some(first_failure.unwrap_or(Counterexample::NoPreservableBasis));
    if let Some((basis, column)) = refutation {
        v.notes.push(format!(
            "basis {basis} has no missing entries and column {column} fails the overlap test: \
             exact refutation for that basis form"
        ));
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecessaryOptions {
    /// Source of row subsets of size `n - k + 1`.
    pub rows: BasisSampler,
    /// Sampler for the inner `k = 1` tests when they are too large to enumerate.
    pub inner: BasisSampler,
    /// Inner tests enumerate all bases when `C(m, n - k) <= inner_budget`.
    pub inner_budget: u128,
    /// Treat an inconclusive randomized inner test as a failure, as the
    /// classic randomized procedure does. Makes failures one-sided guesses.
    pub miss_counts_as_failure: bool,
}

impl NecessaryOptions {
    pub fn exhaustive() -> Self {
        NecessaryOptions {
            rows: BasisSampler::exhaustive(),
            inner: BasisSampler::exhaustive(),
            inner_budget: u128::MAX,
            miss_counts_as_failure: false,
        }
    }
}

const DEFAULT_INNER_BUDGET: u128 = 10_000;

impl Default for NecessaryOptions {
    fn default() -> Self {
        NecessaryOptions {
            rows: BasisSampler::randomized(110, 0),
            inner: BasisSampler::randomized(30, 0),
            inner_budget: DEFAULT_INNER_BUDGET,
            miss_counts_as_failure: false,
        }
    }
}

fn inner_sampler(opts: &NecessaryOptions, cols: usize, size: usize, tag: u64) -> BasisSampler {
    if binomial(cols, size) <= opts.inner_budget {
        BasisSampler {
            mode: crate::sampler::SamplerMode::Exhaustive,
            seed: 0,
        }
    } else {
        BasisSampler {
            mode: opts.inner.mode,
            seed: derive_seed(opts.inner.seed, &[tag]),
        }
    }
}

/// Necessary condition: every `n - k + 1` rows must be completable to rank
/// `n - k`. Answers `NecessaryFails` (with the row subset) or `Unknown`; at
/// `k = 1` the single subset is the whole pattern and the exact test's
/// answer is returned.
pub fn necessary_condition(
    m: &PatternMatrix,
    k: usize,
    opts: &NecessaryOptions,
) -> Result<FeasibilityVerdict> {
    check_k(m, k)?;
    if let Some(v) = screen(m, k, opts.rows.seed)? {
        return Ok(v);
    }
    let n = m.rows();
    if k == 1 {
        let mut v = decide_k1(m, &inner_sampler(opts, m.cols(), n - 1, 0))?;
        if v.status == Status::Infeasible {
            v.status = Status::NecessaryFails;
            v.counterexample = Some(Counterexample::Rows {
                rows: RowSet::full(n),
                detail: v.counterexample.take().map(Box::new),
            });
        }
        if v.status == Status::Feasible {
            v.necessary_holds = Some(true);
        }
        return Ok(v);
    }

    let size = n - k + 1;
    let mut draws = opts.rows.draws(n, size);
    let mut inconclusive = 0usize;
    let mut skipped = 0usize;
    let mut inner_trials = 0usize;
    let mut tag = 0u64;
    while let Some(draw) = draws.next() {
        tag += 1;
        if !draw.fresh {
            continue;
        }
        let sub = m.select_rows(&draw.set)?;
        if !sub.standing_assumption(1)?.holds() {
            skipped += 1;
            continue;
        }
        let sampler = inner_sampler(opts, m.cols(), size - 1, tag);
        let inner = decide_k1(&sub, &sampler)?;
        inner_trials += inner.trials_used;
        let failed = match inner.status {
            Status::Infeasible => true,
            Status::Unknown => {
                inconclusive += 1;
                opts.miss_counts_as_failure
            }
            _ => false,
        };
        if failed {
            let mut v = FeasibilityVerdict::new(Status::NecessaryFails, k, opts.rows.seed);
            v.exhaustive = inner.status == Status::Infeasible;
            v.necessary_holds = Some(false);
            v.trials_used = draws.drawn();
            v.counterexample = Some(Counterexample::Rows {
                rows: draw.set,
                detail: inner.counterexample.map(Box::new),
            });
            if !v.exhaustive {
                v.notes
                    .push("failure inferred from an inconclusive randomized inner test".into());
            }
            return Ok(v);
        }
    }
    let complete = draws.covered_all() && inconclusive == 0;
    let mut v = FeasibilityVerdict::new(Status::Unknown, k, opts.rows.seed);
    v.exhaustive = complete;
    v.necessary_holds = complete.then_some(true);
    v.trials_used = draws.drawn();
    v.notes.push(format!(
        "{} row subsets drawn, {skipped} trivially feasible, {inconclusive} inconclusive, {inner_trials} inner bases drawn",
        draws.drawn()
    ));
    if complete {
        v.notes
            .push("necessary condition holds on every row subset".into());
    }
    Ok(v)
}

/// True iff the pattern has no `*` entries (the only way a rank-0
/// completion exists).
pub fn rank_zero_feasible(m: &PatternMatrix) -> bool {
    m.count(EntryKind::Star) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::IndexSet;

    fn p(s: &str) -> PatternMatrix {
        s.parse().unwrap()
    }

    fn set(one_based: &[usize]) -> IndexSet {
        IndexSet::from_one_based(one_based.iter().copied()).unwrap()
    }

    const EX1: &str = "*?*?\n**?0";
    const EX1_PRIME: &str = "*?*?\n0*?0";
    const EX2: &str = "**0?\n0?*0\n**?*";
    const EX3: &str = "*??*\n***?\n000*";

    #[test]
    fn preservable_bases() {
        let m = p(EX2);
        for pair in [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]] {
            assert!(
                is_preservable_basis(&m, &set(&pair), 1).unwrap(),
                "{pair:?}"
            );
        }
        assert!(is_preservable_basis(&p(EX3), &set(&[1]), 2).unwrap());
        let z = p("0*0\n0*0\n0**");
        assert!(!is_preservable_basis(&z, &set(&[1, 3]), 1).unwrap());
        assert_eq!(
            is_preservable_basis(&m, &set(&[1]), 1),
            Err(Error::WrongBasisSize {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn example_two_columns_pass_on_basis_one_two() {
        let check = k1_column_conditions(&p(EX2), &set(&[1, 2])).unwrap();
        assert_eq!(
            check,
            ConditionCheck::Satisfied(vec![
                ColumnEvidence::QueryInCoBasis { column: 3, row: 3 },
                ColumnEvidence::QueryInCoBasis { column: 4, row: 1 },
            ])
        );
    }

    #[test]
    fn example_two_passing_bases_match_the_worked_example() {
        let m = p(EX2);
        let passing: Vec<Vec<usize>> = BasisSampler::exhaustive()
            .draws(4, 2)
            .filter(|d| {
                matches!(
                    k1_column_conditions(&m, &d.set).unwrap(),
                    ConditionCheck::Satisfied(_)
                )
            })
            .map(|d| d.set.to_one_based())
            .collect();
        assert_eq!(passing, vec![vec![1, 2], vec![1, 3]]);
    }

    #[test]
    fn all_query_non_basis_columns_pass_vacuously() {
        let m = p("*0??\n0*??\n**??");
        let check = k1_column_conditions(&m, &set(&[1, 2])).unwrap();
        assert_eq!(
            check,
            ConditionCheck::Satisfied(vec![
                ColumnEvidence::NoStarInCoBasis { column: 3 },
                ColumnEvidence::NoStarInCoBasis { column: 4 },
            ])
        );
    }

    #[test]
    fn k1_decisions_on_worked_examples() {
        let ex = BasisSampler::exhaustive();
        assert_eq!(decide_k1(&p(EX1), &ex).unwrap().status, Status::Feasible);
        let prime = decide_k1(&p(EX1_PRIME), &ex).unwrap();
        assert_eq!(prime.status, Status::Infeasible);
        assert!(prime.exhaustive);
        let v = decide_k1(&p(EX2), &ex).unwrap();
        assert_eq!(v.status, Status::Feasible);
        assert_eq!(v.witness.unwrap().basis, set(&[1, 2]));
    }

    #[test]
    fn k1_violation_on_example_one_prime() {
        let check = k1_column_conditions(&p(EX1_PRIME), &set(&[1])).unwrap();
        assert!(matches!(check, ConditionCheck::Violated { .. }));
    }

    #[test]
    fn trivial_when_assumption_fails() {
        let v = decide_k1(
            &PatternMatrix::filled(3, 3, EntryKind::Query),
            &BasisSampler::exhaustive(),
        )
        .unwrap();
        assert_eq!(v.status, Status::Feasible);
        assert!(v.trivial);
    }

    #[test]
    fn overlap_condition_on_example_three() {
        let m = p(EX3);
        let basis = set(&[1]);
        let relaxed = m.with_basis_columns(&basis).unwrap();
        assert_eq!(
            overlap_condition(&relaxed, &basis, 1).unwrap(),
            OverlapCondition {
                holds: true,
                rho: 1
            }
        );
        assert_eq!(
            overlap_condition(&relaxed, &basis, 2).unwrap(),
            OverlapCondition {
                holds: true,
                rho: 1
            }
        );
        assert_eq!(
            overlap_condition(&relaxed, &basis, 3).unwrap(),
            OverlapCondition {
                holds: false,
                rho: 2
            }
        );
    }

    #[test]
    fn overlap_condition_empty_support_column() {
        let m = p("*0\n*0\n00");
        let basis = set(&[1]);
        assert_eq!(
            overlap_condition(&m, &basis, 1).unwrap(),
            OverlapCondition {
                holds: true,
                rho: 0
            }
        );
    }

    #[test]
    fn overlap_condition_rejects_bad_preconditions() {
        let m = p(EX3);
        assert!(matches!(
            overlap_condition(&m, &set(&[2]), 0),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            overlap_condition(&m, &set(&[1]), 0),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn sufficient_condition_examples() {
        let ex = BasisSampler::exhaustive();
        let v = sufficient_condition(&p(EX3), 2, &ex).unwrap();
        assert_eq!(v.status, Status::Unknown);
        assert!(v.exhaustive);
        assert!(v.notes.iter().any(|n| n.contains("exact refutation")));
        let v = sufficient_condition(&p(EX2), 1, &ex).unwrap();
        assert_eq!(v.status, Status::SufficientHolds);
        assert_eq!(v.witness.unwrap().form, BasisForm::Relaxed);
        let v = sufficient_condition(&p("*0??\n0*??\n**??"), 1, &ex).unwrap();
        assert!(v.status.is_feasible());
        let v = sufficient_condition(&p("**0?\n0**0\n**0*"), 1, &ex).unwrap();
        assert_eq!(v.status, Status::Unknown);
    }

    #[test]
    fn necessary_condition_examples() {
        let v = necessary_condition(&p(EX3), 2, &NecessaryOptions::exhaustive()).unwrap();
        assert_eq!(v.status, Status::NecessaryFails);
        match v.counterexample.unwrap() {
            Counterexample::Rows { rows, .. } => assert_eq!(rows, set(&[1, 3])),
            other => panic!("unexpected counterexample {other:?}"),
        }
        let sub = p(EX3).select_rows(&set(&[2, 3])).unwrap();
        assert_eq!(
            decide_k1(&sub, &BasisSampler::exhaustive()).unwrap().status,
            Status::Infeasible
        );
    }

    #[test]
    fn necessary_at_k1_matches_exact_test() {
        for s in [EX1, EX1_PRIME, EX2] {
            let m = p(s);
            let exact = decide_k1(&m, &BasisSampler::exhaustive()).unwrap();
            let nec = necessary_condition(&m, 1, &NecessaryOptions::exhaustive()).unwrap();
            assert_eq!(
                exact.status.is_infeasible(),
                nec.status.is_infeasible(),
                "{s}"
            );
            assert_eq!(exact.status.is_feasible(), nec.status.is_feasible(), "{s}");
        }
    }

    #[test]
    fn rank_zero_target() {
        let only_queries = p("??\n??");
        assert!(rank_zero_feasible(&only_queries));
        let v = sufficient_condition(&only_queries, 2, &BasisSampler::exhaustive()).unwrap();
        assert!(v.status.is_feasible());
        let star = p("*?\n??");
        assert!(!rank_zero_feasible(&star));
        let v = sufficient_condition(&star, 2, &BasisSampler::exhaustive()).unwrap();
        assert_eq!(v.status, Status::Unknown);
        let v = necessary_condition(&star, 2, &NecessaryOptions::exhaustive()).unwrap();
        assert_eq!(v.status, Status::NecessaryFails);
    }

    #[test]
    fn invalid_k() {
        let m = p(EX2);
        assert_eq!(
            sufficient_condition(&m, 0, &BasisSampler::exhaustive()).unwrap_err(),
            Error::InvalidK { k: 0, n: 3 }
        );
        assert_eq!(
            necessary_condition(&m, 4, &NecessaryOptions::exhaustive()).unwrap_err(),
            Error::InvalidK { k: 4, n: 3 }
        );
    }
}
