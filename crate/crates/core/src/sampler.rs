//! Column/row subset sources for the basis searches.

use std::collections::HashSet;

use itertools::Itertools;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::pattern::IndexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SamplerMode {
    /// Every subset once, lexicographic order.
    Exhaustive,
    /// At most `limit` uniform draws.
    Randomized { limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisSampler {
    pub mode: SamplerMode,
    pub seed: u64,
}

impl BasisSampler {
    pub fn exhaustive() -> Self {
        BasisSampler {
            mode: SamplerMode::Exhaustive,
            seed: 0,
        }
    }

    pub fn randomized(limit: usize, seed: u64) -> Self {
        BasisSampler {
            mode: SamplerMode::Randomized { limit },
            seed,
        }
    }

    /// Exhaustive when `C(universe, size) <= budget`, otherwise randomized.
    pub fn with_fallback(
        universe: usize,
        size: usize,
        budget: u128,
        limit: usize,
        seed: u64,
    ) -> Self {
        if binomial(universe, size) <= budget {
            BasisSampler {
                mode: SamplerMode::Exhaustive,
                seed,
            }
        } else {
            Self::randomized(limit, seed)
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self.mode, SamplerMode::Exhaustive)
    }

    pub fn draws(&self, universe: usize, size: usize) -> SubsetDraws {
        let total = binomial(universe, size);
        let inner = match self.mode {
            SamplerMode::Exhaustive => {
                DrawSource::Lexicographic(Box::new((0..universe).combinations(size)))
            }
            SamplerMode::Randomized { limit } => {
                let dedupe = total <= 10 * limit as u128;
                DrawSource::Random {
                    rng: ChaCha8Rng::seed_from_u64(self.seed),
                    remaining: if size > universe { 0 } else { limit },
                    seen: dedupe.then(HashSet::new),
                }
            }
        };
        SubsetDraws {
            universe,
            size,
            total,
            inner,
            drawn: 0,
        }
    }
}

enum DrawSource {
    Lexicographic(Box<dyn Iterator<Item = Vec<usize>>>),
    Random {
        rng: ChaCha8Rng,
        remaining: usize,
        seen: Option<HashSet<Vec<usize>>>,
    },
}

/// One subset produced by a sampler.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Draw {
    pub set: IndexSet,
    /// False for a randomized draw already seen earlier in the same run.
    pub fresh: bool,
}

pub struct SubsetDraws {
    universe: usize,
    size: usize,
    total: u128,
    inner: DrawSource,
    drawn: usize,
}

impl SubsetDraws {
    /// Number of draws made so far, repeats included.
    pub fn drawn(&self) -> usize {
        self.drawn
    }

    /// True once every subset has been produced at least once.
    pub fn covered_all(&self) -> bool {
        match &self.inner {
            DrawSource::Lexicographic(_) => true,
            DrawSource::Random {
                seen: Some(seen), ..
            } => seen.len() as u128 == self.total,
            DrawSource::Random { seen: None, .. } => false,
        }
    }
}

impl Iterator for SubsetDraws {
    type Item = Draw;

    fn next(&mut self) -> Option<Draw> {
        let (universe, size, total) = (self.universe, self.size, self.total);
        let draw = match &mut self.inner {
            DrawSource::Lexicographic(it) => it.next().map(|v| Draw {
                set: IndexSet::from_indices(v),
                fresh: true,
            }),
            DrawSource::Random {
                rng,
                remaining,
                seen,
            } => {
                if *remaining == 0 || seen.as_ref().is_some_and(|s| s.len() as u128 == total) {
                    return None;
                }
                *remaining -= 1;
                let mut v = index::sample(rng, universe, size).into_vec();
                v.sort_unstable();
                let fresh = match seen {
                    Some(s) => s.insert(v.clone()),
                    None => true,
                };
                Some(Draw {
                    set: IndexSet::from_indices(v),
                    fresh,
                })
            }
        };
        if draw.is_some() {
            self.drawn += 1;
        }
        draw
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Mixes a base seed with a tag path into an independent 64-bit seed
/// (splitmix64 finalizer per component).
pub fn derive_seed(base: u64, tags: &[u64]) -> u64 {
    let mut state = base;
    for &t in tags {
        state = splitmix(state ^ splitmix(t.wrapping_add(0x9E37_79B9_7F4A_7C15)));
    }
    state
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_is_lexicographic_and_complete() {
        let sets: Vec<Vec<usize>> = BasisSampler::exhaustive()
            .draws(4, 2)
            .map(|d| d.set.as_slice().to_vec())
            .collect();
        assert_eq!(
            sets,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let empty: Vec<Draw> = BasisSampler::exhaustive().draws(3, 0).collect();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].set.is_empty());
        assert_eq!(BasisSampler::exhaustive().draws(2, 3).count(), 0);
    }

    #[test]
    fn randomized_respects_limit_and_seed() {
        let s = BasisSampler::randomized(7, 42);
        let a: Vec<Draw> = s.draws(30, 5).collect();
        let b: Vec<Draw> = s.draws(30, 5).collect();
        assert_eq!(a.len(), 7);
        assert_eq!(a, b);
        assert!(a
            .iter()
            .all(|d| d.set.len() == 5 && d.set.as_slice().iter().all(|&i| i < 30)));
    }

    #[test]
    fn small_universes_dedupe_and_stop_when_covered() {
        let s = BasisSampler::randomized(1000, 3);
        let mut draws = s.draws(4, 2);
        let fresh = draws.by_ref().filter(|d| d.fresh).count();
        assert_eq!(fresh, 6);
        assert!(draws.covered_all());
        assert!(draws.drawn() < 1000);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(20, 10), 184_756);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(7, 0), 1);
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(1, &[0]), derive_seed(1, &[1]));
        assert_ne!(derive_seed(1, &[0, 1]), derive_seed(1, &[1, 0]));
        assert_eq!(derive_seed(9, &[3, 4]), derive_seed(9, &[3, 4]));
    }
}
