use thiserror::Error;

use crate::pattern::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the pattern, matching, feasibility, bounds and oracle APIs.
///
/// Row and column numbers carried by variants are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("k = {k} is outside 1..={n}")]
    InvalidK { k: usize, n: usize },

    #[error("basis has {found} columns, expected {expected}")]
    WrongBasisSize { expected: usize, found: usize },

    #[error("entry ({row}, {col}) is '?' but the query does not allow missing entries")]
    QueryEntryPresent { row: usize, col: usize },

    #[error("columns {basis} do not form a preservable basis")]
    NotAPreservableBasis { basis: String },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("pattern is {rows}x{cols}; this operation needs at least as many columns as rows")]
    PatternNotWide { rows: usize, cols: usize },

    #[error("{p} is not prime")]
    NotPrime { p: u64 },

    #[error("prime {p} too small: need p > {needed}")]
    PrimeTooSmall { p: u64, needed: u64 },

    #[error("{candidates} candidate bases exceed the budget of {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
}
