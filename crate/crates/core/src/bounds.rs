//! Bracketing the generic minimum completion rank by binary search.
//!
//! The upper bound searches for the smallest rank at which the sufficient
//! condition fires; the lower bound for the smallest rank at which the
//! necessary condition does not fail. Ranks at or above `grank(bar M)` are
//! feasible without a test (fill every `?` with zero).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasibility::{
    necessary_condition, sufficient_condition, FeasibilityVerdict, NecessaryOptions, Status,
};
use crate::matching::grank_bar;
use crate::pattern::PatternMatrix;
use crate::sampler::{derive_seed, BasisSampler};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsConfig {
    /// Bases sampled per sufficient-condition test.
    pub t_hat: usize,
    /// Bases sampled per inner rank-deficiency-one test.
    pub t_m: usize,
    /// Row subsets sampled per necessary-condition test.
    pub t_bar: usize,
    pub seed: u64,
    /// Enumerate instead of sampling whenever the candidate count fits.
    pub exhaustive_budget: Option<u128>,
    /// Count an inconclusive randomized inner test as a failure.
    pub miss_counts_as_failure: bool,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        BoundsConfig {
            t_hat: 50,
            t_m: 30,
            t_bar: 110,
            seed: 0x5EED,
            exhaustive_budget: Some(10_000),
            miss_counts_as_failure: false,
        }
    }
}

impl BoundsConfig {
    pub fn exhaustive(seed: u64) -> Self {
        BoundsConfig {
            seed,
            exhaustive_budget: Some(u128::MAX),
            ..Self::default()
        }
    }

    fn sampler(&self, universe: usize, size: usize, limit: usize, seed: u64) -> BasisSampler {
        match self.exhaustive_budget {
            Some(budget) => BasisSampler::with_fallback(universe, size, budget, limit, seed),
            None => BasisSampler::randomized(limit, seed),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    Sufficient,
    Necessary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub r_mid: usize,
    pub k: usize,
    pub condition: Condition,
    /// `None` when `r_mid >= grank(bar M)` and no test was run.
    pub status: Option<Status>,
    pub success: bool,
    pub exhaustive: bool,
    pub trials_used: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundResult {
    pub value: usize,
    pub trace: Vec<TraceStep>,
    /// The step that pins the value was decided soundly: a verified witness
    /// at `value` for the upper bound, an exhaustive failure at `value - 1`
    /// for the lower bound.
    pub confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankBounds {
    pub lower: usize,
    pub upper: usize,
    pub grank_bar: usize,
    pub lower_trace: Vec<TraceStep>,
    pub upper_trace: Vec<TraceStep>,
    pub lower_confirmed: bool,
    pub upper_confirmed: bool,
    pub config: BoundsConfig,
    /// `lower > upper`; only possible with randomized failures.
    pub inconsistent: bool,
}

const UPPER_TAG: u64 = 1;
const LOWER_TAG: u64 = 2;

fn check_wide(m: &PatternMatrix) -> Result<()> {
    if m.rows() > m.cols() {
        return Err(Error::PatternNotWide {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(())
}

/// The search loop, kept literal: `r_high = grank(bar M)`, `r_low = 0`,
/// midpoint rounded down, success moves `r_high` below the midpoint.
fn binary_search(
    grank: usize,
    condition: Condition,
    n: usize,
    mut test: impl FnMut(usize) -> Result<FeasibilityVerdict>,
    success: impl Fn(&FeasibilityVerdict) -> bool,
) -> Result<(usize, Vec<TraceStep>)> {
    let mut r_high = grank as isize;
    let mut r_low: isize = 0;
    let mut trace = Vec::new();
    while r_high >= r_low {
        let r_mid = ((r_high + r_low) / 2) as usize;
        let k = n - r_mid;
        let step = if r_mid >= grank || k == 0 {
            TraceStep {
                r_mid,
                k,
                condition,
                status: None,
                success: true,
                exhaustive: true,
                trials_used: 0,
            }
        } else {
            let v = test(r_mid)?;
            TraceStep {
                r_mid,
                k,
                condition,
                status: Some(v.status),
                success: success(&v),
                exhaustive: v.exhaustive,
                trials_used: v.trials_used,
            }
        };
        if step.success {
            r_high = r_mid as isize - 1;
        } else {
            r_low = r_mid as isize + 1;
        }
        trace.push(step);
    }
    Ok(((r_high + 1) as usize, trace))
}

pub fn upper_bound(m: &PatternMatrix, config: &BoundsConfig) -> Result<BoundResult> {
    check_wide(m)?;
    let (n, cols) = (m.rows(), m.cols());
    let grank = grank_bar(m);
    let (value, trace) = binary_search(
        grank,
        Condition::Sufficient,
        n,
        |r| {
            let sampler = config.sampler(
                cols,
                r,
                config.t_hat,
                derive_seed(config.seed, &[UPPER_TAG, r as u64]),
            );
            sufficient_condition(m, n - r, &sampler)
        },
        |v| v.status.is_feasible(),
    )?;
    let confirmed = value >= grank || trace.iter().any(|s| s.r_mid == value && s.success);
    Ok(BoundResult {
        value,
        trace,
        confirmed,
    })
}

pub fn lower_bound(m: &PatternMatrix, config: &BoundsConfig) -> Result<BoundResult> {
    check_wide(m)?;
    let n = m.rows();
    let grank = grank_bar(m);
    let (value, trace) = binary_search(
        grank,
        Condition::Necessary,
        n,
        |r| {
            let seed = derive_seed(config.seed, &[LOWER_TAG, r as u64]);
            let opts = NecessaryOptions {
                rows: config.sampler(n, r + 1, config.t_bar, seed),
                inner: BasisSampler::randomized(config.t_m, derive_seed(seed, &[0])),
                inner_budget: config.exhaustive_budget.unwrap_or(0),
                miss_counts_as_failure: config.miss_counts_as_failure,
            };
            necessary_condition(m, n - r, &opts)
        },
        |v| !v.status.is_infeasible(),
    )?;
    let confirmed = value == 0
        || trace
            .iter()
            .any(|s| s.r_mid + 1 == value && !s.success && s.exhaustive);
    Ok(BoundResult {
        value,
        trace,
        confirmed,
    })
}

pub fn rank_bounds(m: &PatternMatrix, config: &BoundsConfig) -> Result<RankBounds> {
    let upper = upper_bound(m, config)?;
    let lower = lower_bound(m, config)?;
    Ok(RankBounds {
        lower: lower.value,
        upper: upper.value,
        grank_bar: grank_bar(m),
        inconsistent: lower.value > upper.value,
        lower_trace: lower.trace,
        upper_trace: upper.trace,
        lower_confirmed: lower.confirmed,
        upper_confirmed: upper.confirmed,
        config: *config,
    })
}
