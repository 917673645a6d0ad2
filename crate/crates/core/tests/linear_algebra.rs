use glrmc_core::oracle::{
    field_rank, left_null_space, sample_realization, FieldMatrix, PrimeField, DEFAULT_PRIME,
};
use glrmc_core::{grank_bar, EntryKind, PatternMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gf() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

/// `B * C` with random `B: rows x inner`, `C: inner x cols`.
fn random_low_rank(rng: &mut ChaCha8Rng, rows: usize, inner: usize, cols: usize) -> FieldMatrix {
    let f = gf();
    FieldMatrix::random(f, rows, inner, rng).mul(&FieldMatrix::random(f, inner, cols, rng))
}

#[test]
fn left_null_space_contract() {
    let f = gf();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let (n, m) = (rng.gen_range(1..7), rng.gen_range(1..7));
        let inner = rng.gen_range(0..=n.min(m));
        let a = random_low_rank(&mut rng, n, inner, m);
        let q = left_null_space(&a);
        assert_eq!(q.rows(), n - field_rank(&a));
        assert_eq!(field_rank(&q), q.rows());
        if q.rows() > 0 {
            assert!(q.mul(&a).is_zero());
        }
    }
    assert_eq!(left_null_space(&FieldMatrix::identity(f, 4)).rows(), 0);
    assert_eq!(left_null_space(&FieldMatrix::zeros(f, 3, 5)).rows(), 3);
}

#[test]
fn null_vector_support_matches_row_deletion_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let n = rng.gen_range(2..8);
        let mut a = random_low_rank(&mut rng, n, n - 1, n);
        // Sparsify some rows through zero rows in B so supports vary.
        if rng.gen_bool(0.5) {
            let j = rng.gen_range(0..n);
            let k = (j + 1) % n;
            for c in 0..n {
                let v = a.get(k, c);
                a.set(j, c, v);
            }
        }
        let q = left_null_space(&a);
        if q.rows() != 1 {
            continue;
        }
        for j in 0..n {
            let kept: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let full_row_rank = field_rank(&a.select_rows(&kept)) == n - 1;
            assert_eq!(q.get(0, j) != 0, full_row_rank, "row {j}");
        }
    }
}

#[test]
fn rank_extension_matches_null_space_test() {
    let f = gf();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut both = [0usize; 2];
    for _ in 0..500 {
        let n = rng.gen_range(2..7);
        let r = rng.gen_range(1..n);
        let extra = rng.gen_range(1..4);
        let t1 = FieldMatrix::random(f, n, r, &mut rng);
        if field_rank(&t1) != r {
            continue;
        }
        let t2 = if rng.gen_bool(0.5) {
            t1.mul(&FieldMatrix::random(f, r, extra, &mut rng))
        } else {
            FieldMatrix::random(f, n, extra, &mut rng)
        };
        let gamma = left_null_space(&t1);
        let annihilates = gamma.rows() == 0 || gamma.mul(&t2).is_zero();
        let rank_kept = field_rank(&t1.hstack(&t2)) == r;
        assert_eq!(annihilates, rank_kept);
        both[rank_kept as usize] += 1;
    }
    assert!(both[0] > 100 && both[1] > 100, "{both:?}");
}

#[test]
fn field_rank_tracks_generic_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let kinds = [EntryKind::Zero, EntryKind::Star, EntryKind::Query];
    let mut agree = 0;
    for seed in 0..1000u64 {
        let m = PatternMatrix::from_fn(6, 8, |_, _| kinds[rng.gen_range(0..3)]);
        let real = sample_realization(&m.bar(), DEFAULT_PRIME, seed).unwrap();
        if field_rank(&real.matrix) == grank_bar(&m) {
            agree += 1;
        }
    }
    assert!(agree >= 990, "{agree}/1000");
}
