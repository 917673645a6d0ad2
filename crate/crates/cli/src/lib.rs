//! Front end for `glrmc-core`: the `glrmc` binary's commands, report schema
//! and renderers.

pub mod args;
pub mod experiment;
mod render;
pub mod report;

use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context};
use glrmc_core::bounds::{rank_bounds, BoundsConfig};
use glrmc_core::feasibility::{
    necessary_condition, sufficient_condition, Counterexample, NecessaryOptions,
};
use glrmc_core::oracle::{oracle_feasible, oracle_min_rank, OracleConfig, OracleVerdict};
use glrmc_core::sampler::BasisSampler;
use glrmc_core::{decide_k1, PatternMatrix, Status};

use crate::args::{CheckArgs, Cli, Command, CommonArgs, Format, Mode, OracleArgs, PatternArgs};
use crate::report::{
    BoundsSummary, Decision, OracleSummary, Report, RunConfig, Verdict, WitnessRecord,
};

/// Process exit codes.
pub const EXIT_DECIDED: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: u8,
}

pub fn run(cli: Cli) -> anyhow::Result<Output> {
    match cli.command {
        Command::Check(a) => match &a.verify_witness {
            Some(path) => verify(path),
            None => emit(cmd_check(&a)?, a.common.format),
        },
        Command::Bounds(a) => emit(cmd_bounds(&a)?, a.common.format),
        Command::Oracle(a) => emit(cmd_oracle(&a)?, a.common.format),
        Command::Experiment(a) => {
            let rows = experiment::run(&a)?;
            Ok(Output {
                stdout: experiment::to_csv(&rows),
                code: EXIT_DECIDED,
            })
        }
    }
}

fn emit(report: Report, format: Format) -> anyhow::Result<Output> {
    let code = match report.verdict.as_ref().map(|v| v.decision) {
        Some(Decision::Unknown) => EXIT_UNKNOWN,
        _ => EXIT_DECIDED,
    };
    let stdout = match format {
        Format::Text => render::text(&report),
        Format::Json => report::encode_report(&report),
        Format::Csv => render::csv(&report),
    };
    Ok(Output { stdout, code })
}

fn verify(path: &Path) -> anyhow::Result<Output> {
    let json =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v = report::verify_report_json(&json)?;
    let (word, code) = if v.valid {
        ("verified", EXIT_DECIDED)
    } else {
        ("REJECTED", EXIT_ERROR)
    };
    Ok(Output {
        stdout: format!("witness {word}: {}\n", v.detail),
        code,
    })
}

/// Reads, parses and optionally transposes a pattern file.
pub fn load_pattern(path: &Path, transpose: bool) -> anyhow::Result<PatternMatrix> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let m: PatternMatrix = text
        .parse()
        .with_context(|| format!("parsing {}", path.display()))?;
    let m = if transpose { m.transpose() } else { m };
    if m.rows() > m.cols() {
        bail!(
            "{} is {}x{}: more rows than columns; pass --transpose to work on the transpose",
            path.display(),
            m.rows(),
            m.cols()
        );
    }
    Ok(m)
}

fn config(command: &str, path: Option<&Path>, common: &CommonArgs, seed: u64) -> RunConfig {
    RunConfig {
        command: command.to_string(),
        pattern_path: path.map(|p| p.display().to_string()),
        k: None,
        target_rank: None,
        t_m: common.t_m,
        t_bar: common.t_bar,
        t_hat: common.t_hat,
        prime: None,
        trials: None,
        seed,
        mode: common.mode,
        budget: common.budget,
        transpose: common.transpose,
        miss_is_failure: false,
    }
}

fn sampler(
    common: &CommonArgs,
    universe: usize,
    size: usize,
    limit: u64,
    seed: u64,
) -> BasisSampler {
    match common.mode {
        Mode::Exhaustive => BasisSampler::exhaustive(),
        Mode::Randomized => BasisSampler::randomized(limit as usize, seed),
        Mode::Auto => {
            BasisSampler::with_fallback(universe, size, common.budget as u128, limit as usize, seed)
        }
    }
}

fn exhaustive_budget(common: &CommonArgs) -> Option<u128> {
    match common.mode {
        Mode::Exhaustive => Some(u128::MAX),
        Mode::Randomized => None,
        Mode::Auto => Some(common.budget as u128),
    }
}

fn elapsed_ms(start: Instant, enabled: bool) -> Option<f64> {
    enabled.then(|| start.elapsed().as_secs_f64() * 1e3)
}

pub fn cmd_check(a: &CheckArgs) -> anyhow::Result<Report> {
    let path = a.pattern.as_deref().context("a pattern file is required")?;
    let c = &a.common;
    let m = load_pattern(path, c.transpose)?;
    let n = m.rows();
    if a.k == 0 || a.k > n {
        bail!(glrmc_core::Error::InvalidK { k: a.k, n });
    }
    let seed = c.seed.resolve();
    let start = Instant::now();
    let mut cfg = config("check", Some(path), c, seed);
    cfg.k = Some(a.k);
    cfg.target_rank = Some(n - a.k);

    let mut verdict = Verdict {
        decision: Decision::Unknown,
        k: a.k,
        target_rank: n - a.k,
        exact: None,
        sufficient: None,
        necessary: None,
        oracle: None,
        min_rank: None,
    };
    let mut witness = None;
    if a.k == 1 {
        let v = decide_k1(&m, &sampler(c, m.cols(), n - 1, c.t_m, seed))?;
        verdict.decision = match v.status {
            Status::Feasible => Decision::Feasible,
            Status::Infeasible => Decision::Infeasible,
            _ => Decision::Unknown,
        };
        witness = v
            .witness
            .clone()
            .map(|w| WitnessRecord::Basis { k: 1, witness: w });
        verdict.exact = Some(v);
    } else {
        let suff = sufficient_condition(&m, a.k, &sampler(c, m.cols(), n - a.k, c.t_hat, seed))?;
        let opts = NecessaryOptions {
            rows: sampler(c, n, n - a.k + 1, c.t_bar, seed),
            inner: BasisSampler::randomized(c.t_m as usize, seed),
            inner_budget: exhaustive_budget(c).unwrap_or(0),
            miss_counts_as_failure: false,
        };
        let nec = necessary_condition(&m, a.k, &opts)?;
        if suff.status.is_feasible() {
            verdict.decision = Decision::Feasible;
            witness = suff
                .witness
                .clone()
                .map(|w| WitnessRecord::Basis { k: a.k, witness: w });
        } else if nec.status.is_infeasible() && nec.exhaustive {
            verdict.decision = Decision::Infeasible;
            witness = nec
                .counterexample
                .clone()
                .filter(|c| matches!(c, Counterexample::Rows { .. }))
                .map(|c| WitnessRecord::Rows {
                    k: a.k,
                    counterexample: c,
                });
        }
        verdict.sufficient = Some(suff);
        verdict.necessary = Some(nec);
    }
    Ok(Report {
        config: cfg,
        pattern: m.to_string(),
        transposed: c.transpose,
        verdict: Some(verdict),
        bounds: None,
        witness,
        trace: Vec::new(),
        timing_ms: elapsed_ms(start, c.timing),
    })
}

pub fn cmd_bounds(a: &PatternArgs) -> anyhow::Result<Report> {
    let c = &a.common;
    let m = load_pattern(&a.pattern, c.transpose)?;
    let seed = c.seed.resolve();
    let start = Instant::now();
    let mut cfg = config("bounds", Some(&a.pattern), c, seed);
    cfg.miss_is_failure = a.miss_is_failure;
    let bounds_cfg = BoundsConfig {
        t_hat: c.t_hat as usize,
        t_m: c.t_m as usize,
        t_bar: c.t_bar as usize,
        seed,
        exhaustive_budget: exhaustive_budget(c),
        miss_counts_as_failure: a.miss_is_failure,
    };
    let b = rank_bounds(&m, &bounds_cfg)?;
    let mut trace = b.upper_trace.clone();
    trace.extend(b.lower_trace.iter().cloned());
    Ok(Report {
        config: cfg,
        pattern: m.to_string(),
        transposed: c.transpose,
        verdict: None,
        bounds: Some(BoundsSummary {
            lower: b.lower,
            upper: b.upper,
            grank_bar: b.grank_bar,
            lower_confirmed: b.lower_confirmed,
            upper_confirmed: b.upper_confirmed,
            inconsistent: b.inconsistent,
        }),
        witness: None,
        trace,
        timing_ms: elapsed_ms(start, c.timing),
    })
}

pub fn cmd_oracle(a: &OracleArgs) -> anyhow::Result<Report> {
    let c = &a.common;
    let m = load_pattern(&a.pattern, c.transpose)?;
    let n = m.rows();
    let seed = c.seed.resolve();
    let start = Instant::now();
    let mut cfg = config("oracle", Some(&a.pattern), c, seed);
    cfg.prime = Some(a.prime);
    cfg.trials = Some(a.trials);
    let oracle_cfg = OracleConfig {
        prime: a.prime,
        trials: a.trials as usize,
        seed,
        budget: c.budget as u128,
    };

    let k = match (a.k, a.rank) {
        (Some(k), _) => Some(k),
        (None, Some(r)) if r < n => Some(n - r),
        (None, Some(r)) => bail!("target rank {r} must be below the row count {n}"),
        (None, None) => None,
    };
    let mut witness = None;
    let verdict = match k {
        Some(k) => {
            cfg.k = Some(k);
            let v = oracle_feasible(&m, k, &oracle_cfg)?;
            cfg.target_rank = Some(n - k);
            let (decision, summary) = summarize(&v);
            if let OracleVerdict::Feasible { completion, .. } = v {
                let lifted = completion.matrix.lifted();
                witness = Some(WitnessRecord::Completion {
                    target_rank: n - k,
                    completion,
                    lifted,
                });
            }
            Verdict {
                decision,
                k,
                target_rank: n - k,
                exact: None,
                sufficient: None,
                necessary: None,
                oracle: Some(summary),
                min_rank: None,
            }
        }
        None => {
            let mr = oracle_min_rank(&m, &oracle_cfg)?;
            Verdict {
                decision: if mr.uncertain {
                    Decision::Unknown
                } else {
                    Decision::Feasible
                },
                k: n - mr.rank.min(n),
                target_rank: mr.rank,
                exact: None,
                sufficient: None,
                necessary: None,
                oracle: None,
                min_rank: Some(mr),
            }
        }
    };
    Ok(Report {
        config: cfg,
        pattern: m.to_string(),
        transposed: c.transpose,
        verdict: Some(verdict),
        bounds: None,
        witness,
        trace: Vec::new(),
        timing_ms: elapsed_ms(start, c.timing),
    })
}

fn summarize(v: &OracleVerdict) -> (Decision, OracleSummary) {
    match v {
        OracleVerdict::Feasible { method, trials, .. } => (
            Decision::Feasible,
            OracleSummary {
                verdict: v.label().into(),
                method: Some(*method),
                trials: *trials,
                feasible_trials: *trials,
                conditional: false,
            },
        ),
        OracleVerdict::Infeasible {
            failures,
            conditional,
        } => (
            Decision::Infeasible,
            OracleSummary {
                verdict: v.label().into(),
                method: None,
                trials: failures.len(),
                feasible_trials: 0,
                conditional: *conditional,
            },
        ),
        OracleVerdict::Unknown {
            feasible_trials,
            trials,
        } => (
            Decision::Unknown,
            OracleSummary {
                verdict: v.label().into(),
                method: None,
                trials: *trials,
                feasible_trials: *feasible_trials,
                conditional: false,
            },
        ),
    }
}
