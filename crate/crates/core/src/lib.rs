//! Generic low-rank matrix completion over `{0, *, ?}` patterns.
//!
//! A pattern fixes some entries to zero (`0`), leaves some observed with an
//! unknown generic value (`*`), and marks the rest missing (`?`). The crate
//! decides whether almost every realization admits a completion of rank at
//! most `n - k`, brackets the generic minimum completion rank, and checks
//! answers numerically over a prime field.

pub mod bounds;
pub mod error;
pub mod feasibility;
pub mod matching;
pub mod oracle;
pub mod pattern;
pub mod sampler;

pub use bounds::{
    lower_bound, rank_bounds, upper_bound, BoundResult, BoundsConfig, RankBounds, TraceStep,
};
pub use error::{Error, Result};
pub use feasibility::{
    decide_k1, is_preservable_basis, k1_column_conditions, necessary_condition, overlap_condition,
    sufficient_condition, verify_k1_witness, BasisForm, ColumnEvidence, ConditionCheck,
    Counterexample, FeasibilityVerdict, NecessaryOptions, OverlapCondition, Status, Witness,
};
pub use matching::{
    build_graph, generic_rank, grank_bar, row_deleted_ranks, PatternBipartiteGraph, QueryMode,
};
pub use oracle::{oracle_feasible, oracle_min_rank, OracleConfig, OracleVerdict};
pub use pattern::{
    parse_pattern, ColumnSet, EntryKind, IndexSet, ParseError, PatternMatrix, RowSet,
};
pub use sampler::{BasisSampler, SamplerMode};
