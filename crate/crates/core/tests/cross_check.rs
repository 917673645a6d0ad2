//! The row-deletion k = 1 test against a direct enumeration of the row
//! family, with an independent matching routine.

use glrmc_core::feasibility::{k1_column_conditions, ConditionCheck};
use glrmc_core::sampler::BasisSampler;
use glrmc_core::{is_preservable_basis, ColumnSet, EntryKind, PatternMatrix};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Simple augmenting-path matching on `rows x cols` of nonzero entries.
fn kuhn_rank(m: &PatternMatrix, rows: &[usize], cols: &[usize]) -> usize {
    fn augment(
        r: usize,
        m: &PatternMatrix,
        rows: &[usize],
        cols: &[usize],
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for (ci, &c) in cols.iter().enumerate() {
            if m.get(rows[r], c) == EntryKind::Zero || seen[ci] {
                continue;
            }
            seen[ci] = true;
            if owner[ci].is_none() || augment(owner[ci].unwrap(), m, rows, cols, owner, seen) {
                owner[ci] = Some(r);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; cols.len()];
    (0..rows.len())
        .filter(|&r| augment(r, m, rows, cols, &mut owner, &mut vec![false; cols.len()]))
        .count()
}

/// Conditions with the co-basis family built from every `(n-1)`-row subset.
fn set_form_passes(m: &PatternMatrix, basis: &[usize]) -> bool {
    let n = m.rows();
    let relaxed = m
        .with_basis_columns(&ColumnSet::from_indices(basis.iter().copied()))
        .unwrap();
    let co_basis: Vec<usize> = (0..n)
        .combinations(n - 1)
        .filter(|k| kuhn_rank(&relaxed, k, basis) == n - 1)
        .map(|k| (0..n).find(|j| !k.contains(j)).unwrap())
        .collect();
    (0..m.cols()).filter(|c| !basis.contains(c)).all(|c| {
        let hits = |kind| co_basis.iter().any(|&j| m.get(j, c) == kind);
        !hits(EntryKind::Star) || hits(EntryKind::Query)
    })
}

fn random_pattern(rng: &mut ChaCha8Rng, n: usize, m: usize) -> PatternMatrix {
    let kinds = [EntryKind::Zero, EntryKind::Star, EntryKind::Query];
    PatternMatrix::from_fn(n, m, |_, _| kinds[rng.gen_range(0..3)])
}

fn compare(rng: &mut ChaCha8Rng, n: usize, m: usize) -> usize {
    let p = random_pattern(rng, n, m);
    let mut checked = 0;
    for draw in BasisSampler::exhaustive().draws(m, n - 1) {
        if !is_preservable_basis(&p, &draw.set, 1).unwrap() {
            continue;
        }
        let fast = matches!(
            k1_column_conditions(&p, &draw.set).unwrap(),
            ConditionCheck::Satisfied(_)
        );
        assert_eq!(
            fast,
            set_form_passes(&p, draw.set.as_slice()),
            "basis {} of\n{}",
            draw.set,
            p
        );
        checked += 1;
    }
    checked
}

#[test]
fn matches_set_form_on_small_patterns() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut bases = 0;
    for _ in 0..1000 {
        bases += compare(&mut rng, 4, 5);
        bases += compare(&mut rng, 5, 6);
    }
    assert!(bases > 1000);
}
