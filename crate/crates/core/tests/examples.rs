use std::path::PathBuf;

use glrmc_core::feasibility::{overlap_condition, OverlapCondition};
use glrmc_core::matching::{EdgeLabel, LabelSet};
use glrmc_core::oracle::{field_rank, sample_realization, FieldMatrix, PrimeField, DEFAULT_PRIME};
use glrmc_core::*;

fn fixture(name: &str) -> PatternMatrix {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.pat"));
    std::fs::read_to_string(&path).unwrap().parse().unwrap()
}

fn set(one_based: &[usize]) -> IndexSet {
    IndexSet::from_one_based(one_based.iter().copied()).unwrap()
}

fn exhaustive() -> BasisSampler {
    BasisSampler::exhaustive()
}

#[test]
fn fixtures_have_expected_shapes() {
    let shapes = [
        ("example1", (2, 4)),
        ("example1-prime", (2, 4)),
        ("example2", (3, 4)),
        ("example3", (3, 4)),
        ("M1", (4, 4)),
        ("M2", (5, 5)),
        ("M3", (6, 6)),
    ];
    for (name, (n, m)) in shapes {
        let p = fixture(name);
        assert_eq!((p.rows(), p.cols()), (n, m), "{name}");
    }
}

#[test]
fn parse_examples() {
    let m = parse_pattern("*?0\n0**").unwrap();
    assert_eq!(m.count(EntryKind::Star), 3);
    assert_eq!(m.count(EntryKind::Query), 1);
    assert_eq!(m.count(EntryKind::Zero), 2);
    assert_eq!(
        parse_pattern("**\n*"),
        Err(ParseError::RaggedRows {
            line: 2,
            expected: 2,
            found: 1
        })
    );
    assert_eq!(parse_pattern("").unwrap_err(), ParseError::Empty);
    assert_eq!(
        parse_pattern("# nothing\n\n").unwrap_err(),
        ParseError::Empty
    );
}

#[test]
fn derived_pattern_examples() {
    let m = fixture("example1");
    assert_eq!(m.bar().to_string(), "*0*0\n**00\n");
    assert_eq!(m.hat().to_string(), "****\n***0\n");
    assert_eq!(
        m.with_basis_columns(&set(&[2])).unwrap().to_string(),
        "***?\n**?0\n"
    );
    assert_eq!(m.with_basis_columns(&IndexSet::empty()).unwrap(), m);
}

#[test]
fn generic_rank_examples() {
    let m = fixture("example1");
    let all_rows = RowSet::full(2);
    let all_cols = ColumnSet::full(4);
    assert_eq!(
        generic_rank(&m, &all_rows, &all_cols, QueryMode::AsZero).unwrap(),
        2
    );
    assert_eq!(
        generic_rank(&m, &all_rows, &all_cols, QueryMode::AsStar).unwrap(),
        2
    );
    assert!(matches!(
        generic_rank(&m, &all_rows, &all_cols, QueryMode::Reject),
        Err(Error::QueryEntryPresent { row: 1, col: 2 })
    ));
    let zero = PatternMatrix::filled(3, 3, EntryKind::Zero);
    assert_eq!(grank_bar(&zero), 0);
    let diag = PatternMatrix::from_fn(4, 4, |r, c| {
        if r == c {
            EntryKind::Star
        } else {
            EntryKind::Zero
        }
    });
    assert_eq!(grank_bar(&diag), 4);
}

#[test]
fn bipartite_graph_of_example_two() {
    let g = build_graph(&fixture("example2"));
    assert_eq!(g.edge_count(), 9);
    assert_eq!(g.label(2, 2), Some(EdgeLabel::Query));
    assert_eq!(g.label(0, 2), None);
    let stars = g
        .max_matching(&RowSet::full(3), &ColumnSet::full(4), LabelSet::STAR)
        .unwrap();
    assert_eq!(stars.cardinality(), 3);
}

#[test]
fn assumption_examples() {
    assert!(fixture("example1").standing_assumption(1).unwrap().holds());
    assert!(fixture("M1").standing_assumption(1).unwrap().holds());
    let a = PatternMatrix::filled(3, 3, EntryKind::Query)
        .standing_assumption(1)
        .unwrap();
    assert!(!a.holds());
    assert!(a.diagnostic().contains("grank"));
}

#[test]
fn k1_examples() {
    let v = decide_k1(&fixture("example1"), &exhaustive()).unwrap();
    assert_eq!(v.status, Status::Feasible);
    let v = decide_k1(&fixture("example1-prime"), &exhaustive()).unwrap();
    assert_eq!(v.status, Status::Infeasible);
    let v = decide_k1(&fixture("example2"), &exhaustive()).unwrap();
    assert_eq!(v.status, Status::Feasible);
    let w = v.witness.unwrap();
    assert_eq!(w.basis, set(&[1, 2]));
    assert_eq!(w.evidence.len(), 2);
    assert!(verify_k1_witness(&fixture("example2"), &w.basis).unwrap());
}

#[test]
fn example_three_overlaps() {
    let m = fixture("example3");
    let basis = set(&[1]);
    assert!(is_preservable_basis(&m, &basis, 2).unwrap());
    let relaxed = m.with_basis_columns(&basis).unwrap();
    assert_eq!(
        overlap_condition(&relaxed, &basis, 1).unwrap(),
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
fn example_three_is_infeasible_at_rank_one() {
    let m = fixture("example3");
    let suff = sufficient_condition(&m, 2, &exhaustive()).unwrap();
    assert_eq!(suff.status, Status::Unknown);
    let nec = necessary_condition(&m, 2, &NecessaryOptions::exhaustive()).unwrap();
    assert_eq!(nec.status, Status::NecessaryFails);
    let Some(Counterexample::Rows { rows, .. }) = nec.counterexample else {
        panic!("missing row subset")
    };
    assert_eq!(rows.len(), 2);
    let sub = m.select_rows(&rows).unwrap();
    assert_eq!(
        decide_k1(&sub, &exhaustive()).unwrap().status,
        Status::Infeasible
    );
    let rows_two_three = m.select_rows(&set(&[2, 3])).unwrap();
    assert_eq!(
        decide_k1(&rows_two_three, &exhaustive()).unwrap().status,
        Status::Infeasible
    );
}

#[test]
fn table_one_necessary_conditions() {
    let m1 = fixture("M1");
    for k in [1, 2] {
        let v = necessary_condition(&m1, k, &NecessaryOptions::exhaustive()).unwrap();
        assert!(!v.status.is_infeasible(), "M1 k={k}");
    }
    let m3 = fixture("M3");
    let v = necessary_condition(&m3, 4, &NecessaryOptions::exhaustive()).unwrap();
    assert_eq!(v.status, Status::NecessaryFails);
}

#[test]
fn table_one_bounds() {
    let expected = [("M1", 2, 3), ("M2", 2, 3), ("M3", 3, 3)];
    for (name, lower, upper) in expected {
        let b = rank_bounds(&fixture(name), &BoundsConfig::default()).unwrap();
        assert_eq!((b.lower, b.upper), (lower, upper), "{name}");
        assert!(b.lower_confirmed && b.upper_confirmed, "{name}");
    }
}

#[test]
fn table_one_oracle() {
    let cfg = OracleConfig::default();
    for (name, rank2) in [("M1", true), ("M2", true), ("M3", false)] {
        let m = fixture(name);
        let n = m.rows();
        assert!(
            oracle_feasible(&m, n - 3, &cfg).unwrap().is_feasible(),
            "{name} rank 3"
        );
        assert_eq!(
            oracle_feasible(&m, n - 2, &cfg).unwrap().is_feasible(),
            rank2,
            "{name} rank 2"
        );
    }
    let min = oracle_min_rank(&fixture("M1"), &cfg).unwrap();
    assert!((2..=3).contains(&min.rank));
}

#[test]
fn oracle_examples() {
    let cfg = OracleConfig::default();
    assert!(oracle_feasible(&fixture("example1"), 1, &cfg)
        .unwrap()
        .is_feasible());
    assert!(oracle_feasible(&fixture("example1-prime"), 1, &cfg)
        .unwrap()
        .is_infeasible());
    assert!(oracle_feasible(&fixture("example3"), 2, &cfg)
        .unwrap()
        .is_infeasible());
}

#[test]
fn field_rank_examples() {
    let f = PrimeField::new(DEFAULT_PRIME).unwrap();
    assert_eq!(field_rank(&FieldMatrix::identity(f, 3)), 3);
    assert_eq!(field_rank(&FieldMatrix::zeros(f, 3, 5)), 0);
    let bar = fixture("example1").bar();
    for seed in 0..5 {
        assert_eq!(
            field_rank(
                &sample_realization(&bar, DEFAULT_PRIME, seed)
                    .unwrap()
                    .matrix
            ),
            2
        );
    }
}

#[test]
fn bounds_trivial_examples() {
    let all_star = PatternMatrix::filled(4, 6, EntryKind::Star);
    assert_eq!(
        upper_bound(&all_star, &BoundsConfig::default())
            .unwrap()
            .value,
        4
    );
    let all_query = PatternMatrix::filled(4, 6, EntryKind::Query);
    assert_eq!(
        lower_bound(&all_query, &BoundsConfig::default())
            .unwrap()
            .value,
        0
    );
}
