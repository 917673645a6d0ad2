//! Random-pattern sweep over a density grid.

use std::fmt::Write;
use std::time::Instant;

use anyhow::ensure;
use glrmc_core::bounds::{rank_bounds, BoundsConfig};
use glrmc_core::oracle::{oracle_min_rank, OracleConfig};
use glrmc_core::sampler::derive_seed;
use glrmc_core::{grank_bar, EntryKind, Error, PatternMatrix};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::args::{ExperimentArgs, Mode};

pub const CSV_HEADER: &str = "density,pattern_id,n,m,grank_bar,lower,upper,oracle_rank,ms";

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub density: f64,
    pub pattern_id: usize,
    pub n: usize,
    pub m: usize,
    pub grank_bar: usize,
    pub lower: usize,
    pub upper: usize,
    pub oracle_rank: Option<usize>,
    pub ms: f64,
}

/// `round(density * n * m)` stars at random positions; of the remaining
/// entries, `round(zero_fraction * rest)` are zeros and the others missing.
pub fn random_pattern(
    n: usize,
    m: usize,
    density: f64,
    zero_fraction: f64,
    seed: u64,
) -> PatternMatrix {
    let total = n * m;
    let stars = ((density * total as f64).round() as usize).min(total);
    let zeros = ((zero_fraction * (total - stars) as f64).round() as usize).min(total - stars);
    let mut kinds: Vec<EntryKind> = std::iter::repeat_n(EntryKind::Star, stars)
        .chain(std::iter::repeat_n(EntryKind::Zero, zeros))
        .chain(std::iter::repeat_n(EntryKind::Query, total - stars - zeros))
        .collect();
    kinds.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    PatternMatrix::from_fn(n, m, |r, c| kinds[r * m + c])
}

pub fn run(a: &ExperimentArgs) -> anyhow::Result<Vec<Row>> {
    let n = a.n;
    let m = a.m.unwrap_or(n);
    ensure!(n >= 1, "--n must be positive");
    ensure!(m >= n, "--m must be at least --n");
    ensure!(a.patterns >= 1, "--patterns must be positive");
    ensure!(
        a.densities.iter().all(|d| (0.0..=1.0).contains(d)),
        "densities must lie in [0, 1]"
    );
    ensure!(
        (0.0..=1.0).contains(&a.zero_fraction),
        "--zero-fraction must lie in [0, 1]"
    );
    let c = &a.common;
    let seed = c.seed.resolve();
    let cells: Vec<(usize, usize)> = (0..a.densities.len())
        .flat_map(|d| (0..a.patterns).map(move |id| (d, id)))
        .collect();

    cells
        .par_iter()
        .map(|&(di, id)| {
            let density = a.densities[di];
            let cell_seed = derive_seed(seed, &[di as u64, id as u64]);
            let p = random_pattern(n, m, density, a.zero_fraction, cell_seed);
            let start = Instant::now();
            let bounds = rank_bounds(
                &p,
                &BoundsConfig {
                    t_hat: c.t_hat as usize,
                    t_m: c.t_m as usize,
                    t_bar: c.t_bar as usize,
                    seed: cell_seed,
                    exhaustive_budget: match c.mode {
                        Mode::Auto => Some(c.budget as u128),
                        Mode::Exhaustive => Some(u128::MAX),
                        Mode::Randomized => None,
                    },
                    miss_counts_as_failure: false,
                },
            )?;
            let oracle_rank = if a.oracle {
                let cfg = OracleConfig {
                    prime: a.prime,
                    trials: a.trials as usize,
                    seed: cell_seed,
                    budget: c.budget as u128,
                };
                match oracle_min_rank(&p, &cfg) {
                    Ok(mr) if !mr.uncertain => Some(mr.rank),
                    Ok(_) | Err(Error::BudgetExceeded { .. }) => None,
                    Err(e) => return Err(e.into()),
                }
            } else {
                None
            };
            Ok(Row {
                density,
                pattern_id: id,
                n,
                m,
                grank_bar: grank_bar(&p),
                lower: bounds.lower,
                upper: bounds.upper,
                oracle_rank,
                ms: if c.timing {
                    start.elapsed().as_secs_f64() * 1e3
                } else {
                    0.0
                },
            })
        })
        .collect()
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in rows {
        let oracle = r.oracle_rank.map(|x| x.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{oracle},{:.3}",
            r.density, r.pattern_id, r.n, r.m, r.grank_bar, r.lower, r.upper, r.ms
        );
    }
    out
}
