//! Numerical cross-check over `GF(p)`.
//!
//! Each trial draws a realization of the `*` entries and looks for a
//! completion of rank at most `r = n - k` in three ways, cheapest first:
//!
//! 1. fill every `?` with zero;
//! 2. for each `r`-column candidate basis, draw its `?` entries at random and
//!    solve for every other column as a combination of the basis on the rows
//!    where that column is observed;
//! 3. for each candidate basis of size `s <= r`, test whether completions of
//!    the form `[Y | Y a_i]` (zeros respected) reach a dense set of `*`
//!    values, by comparing the rank of the parametrization's differential
//!    on the zero-constraint tangent space with the number of `*` entries.
//!
//! Step 3 produces a completion for a realization of its own choosing (a
//! generic point of the image); steps 1 and 2 complete the drawn one. Every
//! completion is checked against the pattern and its rank before it is
//! returned.

mod field;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use field::{field_rank, is_prime, left_null_space, FieldMatrix, PrimeField, DEFAULT_PRIME};

use crate::error::{Error, Result};
use crate::matching::grank_bar;
use crate::pattern::{ColumnSet, EntryKind, PatternMatrix};
use crate::sampler::{binomial, derive_seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub prime: u64,
    pub trials: usize,
    pub seed: u64,
    /// Largest admissible `C(m, n - k)`.
    pub budget: u128,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            prime: DEFAULT_PRIME,
            trials: 5,
            seed: 0x00C0_FFEE,
            budget: 10_000,
        }
    }
}

/// Star values of one realization; `0` and `?` positions are zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub matrix: FieldMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Completion {
    pub realization: Realization,
    pub matrix: FieldMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchMethod {
    ZeroFill,
    BasisSolve,
    Dominance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub trial: usize,
    /// Candidate bases whose block reached full column rank.
    pub full_rank_bases: usize,
    pub bases_tried: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleVerdict {
    Feasible {
        completion: Completion,
        method: SearchMethod,
        basis: ColumnSet,
        trials: usize,
    },
    /// `conditional` marks `k > 1`, where a miss of the basis search is not
    /// known to rule out every completion.
    Infeasible {
        failures: Vec<TrialFailure>,
        conditional: bool,
    },
    Unknown {
        feasible_trials: usize,
        trials: usize,
    },
}

impl OracleVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, OracleVerdict::Feasible { .. })
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, OracleVerdict::Infeasible { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            OracleVerdict::Feasible { .. } => "Feasible",
            OracleVerdict::Infeasible { .. } => "Infeasible",
            OracleVerdict::Unknown { .. } => "Unknown",
        }
    }
}

fn field_for(m: &PatternMatrix, p: u64) -> Result<PrimeField> {
    let field = PrimeField::new(p)?;
    let needed = (m.rows() * m.cols()) as u64;
    if p <= needed {
        return Err(Error::PrimeTooSmall { p, needed });
    }
    Ok(field)
}

/// Uniform nonzero values on the `*` positions.
pub fn sample_realization(m: &PatternMatrix, p: u64, seed: u64) -> Result<Realization> {
    let field = field_for(m, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(draw_realization(m, field, &mut rng))
}

fn draw_realization(m: &PatternMatrix, field: PrimeField, rng: &mut ChaCha8Rng) -> Realization {
    let mut x = FieldMatrix::zeros(field, m.rows(), m.cols());
    for (r, c) in m.positions(EntryKind::Star) {
        x.set(r, c, field.random_nonzero(rng));
    }
    Realization { matrix: x }
}

/// Pattern constraints and rank bound of a completion.
pub fn verify_completion(m: &PatternMatrix, completion: &Completion, max_rank: usize) -> bool {
    let (real, x) = (&completion.realization.matrix, &completion.matrix);
    let shape_ok = |a: &FieldMatrix| a.rows() == m.rows() && a.cols() == m.cols();
    if !shape_ok(real) || !shape_ok(x) || real.field() != x.field() {
        return false;
    }
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let ok = match m.get(r, c) {
                EntryKind::Zero => real.get(r, c) == 0 && x.get(r, c) == 0,
                EntryKind::Star => real.get(r, c) != 0 && x.get(r, c) == real.get(r, c),
                EntryKind::Query => real.get(r, c) == 0,
            };
            if !ok {
                return false;
            }
        }
    }
    x.rank() <= max_rank
}

struct Found {
    completion: Completion,
    method: SearchMethod,
    basis: ColumnSet,
}

enum TrialOutcome {
    Found(Found),
    Missed(TrialFailure),
}

/// Feasibility of a completion of rank at most `n - k`, agreed over
/// `config.trials` independent trials.
pub fn oracle_feasible(
    m: &PatternMatrix,
    k: usize,
    config: &OracleConfig,
) -> Result<OracleVerdict> {
    if k == 0 || k > m.rows() {
        return Err(Error::InvalidK { k, n: m.rows() });
    }
    let field = field_for(m, config.prime)?;
    let target = m.rows() - k;
    let candidates = binomial(m.cols(), target);
    if candidates > config.budget {
        return Err(Error::BudgetExceeded {
            candidates,
            budget: config.budget,
        });
    }
    let trials = config.trials.max(1);
    let mut found = Vec::new();
    let mut failures = Vec::new();
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, &[k as u64, t as u64]));
        match run_trial(m, target, field, &mut rng, t) {
            TrialOutcome::Found(f) => {
                assert!(
                    verify_completion(m, &f.completion, target),
                    "oracle produced an invalid completion for rank {target}"
                );
                found.push(f);
            }
            TrialOutcome::Missed(fail) => failures.push(fail),
        }
    }
    Ok(if failures.is_empty() {
        let f = found.swap_remove(0);
        OracleVerdict::Feasible {
            completion: f.completion,
            method: f.method,
            basis: f.basis,
            trials,
        }
    } else if found.is_empty() {
        OracleVerdict::Infeasible {
            failures,
            conditional: k > 1,
        }
    } else {
        OracleVerdict::Unknown {
            feasible_trials: found.len(),
            trials,
        }
    })
}

fn run_trial(
    m: &PatternMatrix,
    target: usize,
    field: PrimeField,
    rng: &mut ChaCha8Rng,
    trial: usize,
) -> TrialOutcome {
    let realization = draw_realization(m, field, rng);
    let (_, pivots) = realization.matrix.rref();
    if pivots.len() <= target {
        let completion = Completion {
            matrix: realization.matrix.clone(),
            realization,
        };
        return TrialOutcome::Found(Found {
            completion,
            method: SearchMethod::ZeroFill,
            basis: ColumnSet::from_indices(pivots),
        });
    }

    let mut failure = TrialFailure {
        trial,
        full_rank_bases: 0,
        bases_tried: 0,
    };
    for basis in (0..m.cols()).combinations(target) {
        failure.bases_tried += 1;
        if let Some(x) = solve_on_basis(m, &realization, &basis, rng, &mut failure) {
            let completion = Completion {
                realization,
                matrix: x,
            };
            return TrialOutcome::Found(Found {
                completion,
                method: SearchMethod::BasisSolve,
                basis: ColumnSet::from_indices(basis),
            });
        }
    }

    for size in (0..=target).rev() {
        for basis in (0..m.cols()).combinations(size) {
            let queries: Vec<(usize, usize)> = m
                .positions(EntryKind::Query)
                .into_iter()
                .filter(|(_, c)| basis.contains(c))
                .collect();
            for mask in zero_masks(queries.len(), rng) {
                let zeroed = PatternMatrix::from_fn(m.rows(), m.cols(), |r, c| {
                    match queries.iter().position(|&q| q == (r, c)) {
                        Some(bit) if mask >> bit & 1 == 1 => EntryKind::Zero,
                        _ => m.get(r, c),
                    }
                });
                if let Some(completion) = dominant_completion(&zeroed, &basis, field, rng) {
                    if completion.matrix.rank() <= target {
                        return TrialOutcome::Found(Found {
                            completion,
                            method: SearchMethod::Dominance,
                            basis: ColumnSet::from_indices(basis),
                        });
                    }
                }
            }
        }
    }
    TrialOutcome::Missed(failure)
}

const MAX_ENUMERATED_QUERIES: usize = 10;
const SAMPLED_MASKS: usize = 1 << MAX_ENUMERATED_QUERIES;

/// Subsets of basis-column `?` entries to pin at zero: every subset by
/// increasing size when there are few, otherwise the empty one followed by
/// random ones.
fn zero_masks(queries: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    if queries <= MAX_ENUMERATED_QUERIES {
        let mut masks: Vec<u64> = (0..1u64 << queries).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        masks
    } else {
        let width = queries.min(64);
        std::iter::once(0)
            .chain((1..SAMPLED_MASKS).map(|_| rng.gen::<u64>() >> (64 - width)))
            .collect()
    }
}

fn solve_on_basis(
    m: &PatternMatrix,
    realization: &Realization,
    basis: &[usize],
    rng: &mut ChaCha8Rng,
    failure: &mut TrialFailure,
) -> Option<FieldMatrix> {
    let field = realization.matrix.field();
    let mut x = realization.matrix.clone();
    for &c in basis {
        for r in 0..m.rows() {
            if m.get(r, c) == EntryKind::Query {
                x.set(r, c, field.random(rng));
            }
        }
    }
    let block = x.select_cols(basis);
    if block.rank() < basis.len() {
        return None;
    }
    failure.full_rank_bases += 1;
    for c in (0..m.cols()).filter(|c| !basis.contains(c)) {
        let observed: Vec<usize> = (0..m.rows())
            .filter(|&r| m.get(r, c) != EntryKind::Query)
            .collect();
        let rhs: Vec<u64> = observed.iter().map(|&r| x.get(r, c)).collect();
        let coeffs = block.select_rows(&observed).solve(&rhs)?;
        for (r, v) in block.mul_vec(&coeffs).into_iter().enumerate() {
            x.set(r, c, v);
        }
    }
    Some(x)
}

/// Random point `(Y, a)` of the completions `[Y | Y a_i]` that respect the
/// zeros; returns it when the `*` entries are locally free there.
fn dominant_completion(
    m: &PatternMatrix,
    basis: &[usize],
    field: PrimeField,
    rng: &mut ChaCha8Rng,
) -> Option<Completion> {
    let (n, s) = (m.rows(), basis.len());
    let others: Vec<usize> = (0..m.cols()).filter(|c| !basis.contains(c)).collect();

    let mut y_var = vec![vec![None; s]; n];
    let mut y = FieldMatrix::zeros(field, n, s);
    let mut n_y = 0;
    for (l, &c) in basis.iter().enumerate() {
        for (r, row_vars) in y_var.iter_mut().enumerate() {
            if m.get(r, c) != EntryKind::Zero {
                row_vars[l] = Some(n_y);
                n_y += 1;
                y.set(r, l, field.random_nonzero(rng));
            }
        }
    }

    let zero_rows: Vec<Vec<usize>> = others
        .iter()
        .map(|&c| (0..n).filter(|&r| m.get(r, c) == EntryKind::Zero).collect())
        .collect();
    let alphas: Vec<Vec<u64>> = zero_rows
        .iter()
        .map(|rows| {
            let kernel = y.select_rows(rows).right_null_space();
            let weights: Vec<u64> = (0..kernel.cols()).map(|_| field.random(rng)).collect();
            kernel.mul_vec(&weights)
        })
        .collect();

    let n_vars = n_y + others.len() * s;
    let alpha_var = |o: usize, l: usize| n_y + o * s + l;
    let product_row = |r: usize, o: usize| -> Vec<u64> {
        let mut row = vec![0; n_vars];
        for l in 0..s {
            if let Some(v) = y_var[r][l] {
                row[v] = alphas[o][l];
            }
            row[alpha_var(o, l)] = y.get(r, l);
        }
        row
    };

    let mut constraints = Vec::new();
    for (o, rows) in zero_rows.iter().enumerate() {
        for &r in rows {
            constraints.push(product_row(r, o));
        }
    }
    let tangent = if constraints.is_empty() {
        FieldMatrix::identity(field, n_vars)
    } else {
        FieldMatrix::from_rows(field, &constraints).right_null_space()
    };

    let mut differential = Vec::new();
    for (r, c) in m.positions(EntryKind::Star) {
        match basis.iter().position(|&b| b == c) {
            Some(l) => {
                let mut row = vec![0; n_vars];
                row[y_var[r][l].expect("star entries carry a variable")] = 1;
                differential.push(row);
            }
            None => {
                let o = others
                    .iter()
                    .position(|&x| x == c)
                    .expect("non-basis column");
                differential.push(product_row(r, o));
            }
        }
    }
    if !differential.is_empty() {
        if tangent.cols() < differential.len() {
            return None;
        }
        let image = FieldMatrix::from_rows(field, &differential).mul(&tangent);
        if image.rank() < differential.len() {
            return None;
        }
    }

    let mut x = FieldMatrix::zeros(field, n, m.cols());
    for (l, &c) in basis.iter().enumerate() {
        for r in 0..n {
            x.set(r, c, y.get(r, l));
        }
    }
    for (o, &c) in others.iter().enumerate() {
        for (r, v) in y.mul_vec(&alphas[o]).into_iter().enumerate() {
            x.set(r, c, v);
        }
    }
    let real = FieldMatrix::from_fn(field, n, m.cols(), |r, c| match m.get(r, c) {
        EntryKind::Star => x.get(r, c),
        _ => 0,
    });
    let completion = Completion {
        realization: Realization { matrix: real },
        matrix: x,
    };
    let stars_nonzero = m
        .positions(EntryKind::Star)
        .into_iter()
        .all(|(r, c)| completion.matrix.get(r, c) != 0);
    stars_nonzero.then_some(completion)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinRankStep {
    pub rank: usize,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinRank {
    pub rank: usize,
    pub steps: Vec<MinRankStep>,
    /// Some smaller rank came back `Unknown`.
    pub uncertain: bool,
}

/// Smallest `r` for which the oracle finds a rank-`r` completion, scanning
/// upward from zero. `grank(bar M)` is always attainable by zero-filling.
pub fn oracle_min_rank(m: &PatternMatrix, config: &OracleConfig) -> Result<MinRank> {
    let cap = grank_bar(m);
    let mut steps = Vec::new();
    let mut uncertain = false;
    for r in 0..cap.min(m.rows()) {
        let verdict = oracle_feasible(m, m.rows() - r, config)?;
        steps.push(MinRankStep {
            rank: r,
            verdict: verdict.label().to_string(),
        });
        match verdict {
            OracleVerdict::Feasible { .. } => {
                return Ok(MinRank {
                    rank: r,
                    steps,
                    uncertain,
                })
            }
            OracleVerdict::Unknown { .. } => uncertain = true,
            OracleVerdict::Infeasible { .. } => {}
        }
    }
    Ok(MinRank {
        rank: cap,
        steps,
        uncertain,
    })
}

/// A fresh random seed, for callers that opt out of reproducibility.
pub fn random_seed() -> u64 {
    rand::thread_rng().gen()
}
