//! Report schema shared by the JSON output and `check --verify-witness`.

use glrmc_core::bounds::TraceStep;
use glrmc_core::feasibility::{overlap_condition, Counterexample, FeasibilityVerdict, Witness};
use glrmc_core::oracle::{verify_completion, Completion, MinRank, SearchMethod};
use glrmc_core::sampler::binomial;
use glrmc_core::{
    decide_k1, is_preservable_basis, verify_k1_witness, BasisSampler, Error, PatternMatrix, Status,
};
use serde::{Deserialize, Serialize};

use crate::args::Mode;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub pattern_path: Option<String>,
    pub k: Option<usize>,
    pub target_rank: Option<usize>,
    pub t_m: u64,
    pub t_bar: u64,
    pub t_hat: u64,
    pub prime: Option<u64>,
    pub trials: Option<u64>,
    pub seed: u64,
    pub mode: Mode,
    pub budget: u64,
    pub transpose: bool,
    pub miss_is_failure: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    Feasible,
    Infeasible,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub verdict: String,
    pub method: Option<SearchMethod>,
    pub trials: usize,
    pub feasible_trials: usize,
    /// Negative answer relies on the basis search being complete for `k > 1`.
    pub conditional: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub decision: Decision,
    pub k: usize,
    pub target_rank: usize,
    pub exact: Option<FeasibilityVerdict>,
    pub sufficient: Option<FeasibilityVerdict>,
    pub necessary: Option<FeasibilityVerdict>,
    pub oracle: Option<OracleSummary>,
    pub min_rank: Option<MinRank>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsSummary {
    pub lower: usize,
    pub upper: usize,
    pub grank_bar: usize,
    pub lower_confirmed: bool,
    pub upper_confirmed: bool,
    pub inconsistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum WitnessRecord {
    /// Passing basis of the exact test (`k = 1`) or of the sufficient condition.
    Basis { k: usize, witness: Witness },
    /// Row subset on which the rank-deficiency-one subproblem is infeasible.
    Rows {
        k: usize,
        counterexample: Counterexample,
    },
    Completion {
        target_rank: usize,
        completion: Completion,
        lifted: Vec<Vec<i64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    /// Canonical text of the pattern the results refer to.
    pub pattern: String,
    pub transposed: bool,
    pub verdict: Option<Verdict>,
    pub bounds: Option<BoundsSummary>,
    pub witness: Option<WitnessRecord>,
    pub trace: Vec<TraceStep>,
    pub timing_ms: Option<f64>,
}

/// Exhaustive re-checks larger than this are refused.
const VERIFY_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub valid: bool,
    pub detail: String,
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("report is not valid JSON for this schema: {0}")]
    Decode(#[from] serde_json::Error),
    #[error("report pattern: {0}")]
    Pattern(#[from] Error),
    #[error("report carries no witness or counterexample")]
    NoWitness,
}

/// Pretty JSON with a trailing newline, as printed by `--format json`.
pub fn encode_report(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes") + "\n"
}

pub fn decode_report(json: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(json)
}

pub fn verify_report_json(json: &str) -> Result<Verification, VerifyError> {
    verify_report(&decode_report(json)?)
}

/// Recomputes the recorded witness from the pattern alone.
pub fn verify_report(report: &Report) -> Result<Verification, VerifyError> {
    let m: PatternMatrix = report.pattern.parse().map_err(Error::from)?;
    let witness = report.witness.as_ref().ok_or(VerifyError::NoWitness)?;
    let n = m.rows();
    let check_k = |k: usize| {
        if k == 0 || k > n {
            Err(Error::InvalidK { k, n })
        } else {
            Ok(())
        }
    };
    let (valid, detail) = match witness {
        WitnessRecord::Basis { k, witness } => {
            check_k(*k)?;
            witness.basis.check_bound(m.cols())?;
            if witness.basis.len() != n - k {
                (
                    false,
                    format!("basis {} has the wrong size for k = {k}", witness.basis),
                )
            } else if *k == 1 {
                (
                    verify_k1_witness(&m, &witness.basis)?,
                    format!("basis {} for k = 1", witness.basis),
                )
            } else {
                (
                    overlap_witness_holds(&m, &witness.basis, *k)?,
                    format!("basis {} for k = {k}", witness.basis),
                )
            }
        }
        WitnessRecord::Rows { k, counterexample } => {
            check_k(*k)?;
            match counterexample {
                Counterexample::Rows { rows, .. } => {
                    rows.check_bound(n)?;
                    if rows.len() != n - k + 1 {
                        (
                            false,
                            format!("row subset {rows} has the wrong size for k = {k}"),
                        )
                    } else {
                        let sub = m.select_rows(rows)?;
                        let candidates = binomial(sub.cols(), sub.rows() - 1);
                        if candidates > VERIFY_LIMIT {
                            return Err(Error::BudgetExceeded {
                                candidates,
                                budget: VERIFY_LIMIT,
                            }
                            .into());
                        }
                        let v = decide_k1(&sub, &BasisSampler::exhaustive())?;
                        (
                            v.status == Status::Infeasible,
                            format!("rows {rows} admit no rank-{} completion", n - k),
                        )
                    }
                }
                _ => (false, "counterexample is not a row subset".to_string()),
            }
        }
        WitnessRecord::Completion {
            target_rank,
            completion,
            ..
        } => (
            verify_completion(&m, completion, *target_rank),
            format!("completion of rank at most {target_rank}"),
        ),
    };
    Ok(Verification { valid, detail })
}

fn overlap_witness_holds(
    m: &PatternMatrix,
    basis: &glrmc_core::ColumnSet,
    k: usize,
) -> Result<bool, Error> {
    if !is_preservable_basis(m, basis, k)? {
        return Ok(false);
    }
    let relaxed = m.with_basis_columns(basis)?;
    for col in basis.complement(m.cols()).iter() {
        if !overlap_condition(&relaxed, basis, col)?.holds {
            return Ok(false);
        }
    }
    Ok(true)
}
