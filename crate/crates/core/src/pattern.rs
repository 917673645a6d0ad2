//! Pattern matrices over the symbols `0` (fixed zero), `*` (observed, generic)
//! and `?` (missing), plus the derived patterns used by the feasibility tests.
//!
//! Indices are 0-based inside the crate. Everything that is shown to a user
//! (`Display`, serialized index sets, error messages) is 1-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::matching::{generic_rank, QueryMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EntryKind {
    Zero,
    Star,
    Query,
}

impl EntryKind {
    pub fn symbol(self) -> char {
        match self {
            EntryKind::Zero => '0',
            EntryKind::Star => '*',
            EntryKind::Query => '?',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            '0' => Some(EntryKind::Zero),
            '*' => Some(EntryKind::Star),
            '?' => Some(EntryKind::Query),
            _ => None,
        }
    }
}

/// Sorted, duplicate-free set of 0-based indices.
///
/// Serializes as a list of 1-based indices so reports read like the usual
/// `J_n` / `J_m` notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(Vec<usize>);

pub type RowSet = IndexSet;
pub type ColumnSet = IndexSet;

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// `{0, .., len-1}`.
    pub fn full(len: usize) -> Self {
        IndexSet((0..len).collect())
    }

    /// Builds a set from arbitrary 0-based indices, sorting and removing duplicates.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IndexSet(v)
    }

    /// Builds a set from 1-based indices as written in reports.
    pub fn from_one_based<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut v = Vec::new();
        for i in indices {
            if i == 0 {
                return Err(Error::IndexOutOfRange {
                    index: 0,
                    bound: usize::MAX,
                });
            }
            v.push(i - 1);
        }
        Ok(Self::from_indices(v))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    /// Indices of `0..len` not in the set.
    pub fn complement(&self, len: usize) -> Self {
        IndexSet((0..len).filter(|i| !self.contains(*i)).collect())
    }

    pub fn without(&self, index: usize) -> Self {
        IndexSet(self.0.iter().copied().filter(|&i| i != index).collect())
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }

    /// Fails with `IndexOutOfRange` unless every index is below `bound`.
    pub fn check_bound(&self, bound: usize) -> Result<()> {
        match self.0.last() {
            Some(&last) if last >= bound => Err(Error::IndexOutOfRange {
                index: last + 1,
                bound,
            }),
            _ => Ok(()),
        }
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (pos, i) in self.0.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_one_based().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<usize>::deserialize(deserializer)?;
        if raw.contains(&0) {
            return Err(serde::de::Error::custom("index sets are 1-based"));
        }
        if raw.windows(2).any(|w| w[0] >= w[1]) {
            return Err(serde::de::Error::custom(
                "index set must be strictly increasing",
            ));
        }
        Ok(IndexSet(raw.into_iter().map(|i| i - 1).collect()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: row has {found} entries, expected {expected}")]
    RaggedRows {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("illegal character {ch:?} at row {row}, column {col} (line {line})")]
    IllegalCharacter {
        line: usize,
        row: usize,
        col: usize,
        ch: char,
    },
    #[error("pattern has no data rows")]
    Empty,
}

/// An `n x m` matrix over {`0`, `*`, `?`}. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<EntryKind>,
}

impl PatternMatrix {
    /// Row-major construction. Fails if the dimensions are zero or do not
    /// match `entries`.
    pub fn new(rows: usize, cols: usize, entries: Vec<EntryKind>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::PreconditionViolated(
                "pattern dimensions must be positive".into(),
            ));
        }
        if entries.len() != rows * cols {
            return Err(Error::PreconditionViolated(format!(
                "{} entries supplied for a {rows}x{cols} pattern",
                entries.len()
            )));
        }
        Ok(PatternMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> EntryKind) -> Self {
        assert!(rows > 0 && cols > 0, "pattern dimensions must be positive");
        let entries = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .map(|(r, c)| f(r, c))
            .collect();
        PatternMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn filled(rows: usize, cols: usize, kind: EntryKind) -> Self {
        Self::from_fn(rows, cols, |_, _| kind)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> EntryKind {
        self.entries[row * self.cols + col]
    }

    pub fn entries(&self) -> &[EntryKind] {
        &self.entries
    }

    /// Positions of a given kind, row-major.
    pub fn positions(&self, kind: EntryKind) -> Vec<(usize, usize)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == kind)
            .map(|(idx, _)| (idx / self.cols, idx % self.cols))
            .collect()
    }

    pub fn count(&self, kind: EntryKind) -> usize {
        self.entries.iter().filter(|&&e| e == kind).count()
    }

    /// Rows `j` of column `col` with entry `kind`.
    pub fn column_rows(&self, col: usize, kind: EntryKind) -> RowSet {
        IndexSet(
            (0..self.rows)
                .filter(|&r| self.get(r, col) == kind)
                .collect(),
        )
    }

    /// `N_{*i}`: rows holding a `*` in column `col`.
    pub fn star_rows(&self, col: usize) -> RowSet {
        self.column_rows(col, EntryKind::Star)
    }

    /// `N_{?i}`: rows holding a `?` in column `col`.
    pub fn query_rows(&self, col: usize) -> RowSet {
        self.column_rows(col, EntryKind::Query)
    }

    /// `N_i = N_{*i} ∪ N_{?i}`: rows holding a nonzero symbol in column `col`.
    pub fn support_rows(&self, col: usize) -> RowSet {
        IndexSet(
            (0..self.rows)
                .filter(|&r| self.get(r, col) != EntryKind::Zero)
                .collect(),
        )
    }

    pub fn has_query_in(&self, rows: &RowSet, cols: &ColumnSet) -> Option<(usize, usize)> {
        rows.iter()
            .flat_map(|r| cols.iter().map(move |c| (r, c)))
            .find(|&(r, c)| self.get(r, c) == EntryKind::Query)
    }

    fn map_entries(&self, f: impl Fn(usize, usize, EntryKind) -> EntryKind) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| f(r, c, self.get(r, c)))
    }

    /// Missing entries replaced by fixed zeros.
    pub fn bar(&self) -> Self {
        self.map_entries(|_, _, e| {
            if e == EntryKind::Query {
                EntryKind::Zero
            } else {
                e
            }
        })
    }

    /// Missing entries replaced by generic entries.
    pub fn hat(&self) -> Self {
        self.map_entries(|_, _, e| {
            if e == EntryKind::Query {
                EntryKind::Star
            } else {
                e
            }
        })
    }

    /// `M(I)`: missing entries in the columns of `basis` become generic.
    pub fn with_basis_columns(&self, basis: &ColumnSet) -> Result<Self> {
        basis.check_bound(self.cols)?;
        Ok(self.map_entries(|_, c, e| {
            if e == EntryKind::Query && basis.contains(c) {
                EntryKind::Star
            } else {
                e
            }
        }))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// `M[rows, :]`, keeping row order.
    pub fn select_rows(&self, rows: &RowSet) -> Result<Self> {
        rows.check_bound(self.rows)?;
        if rows.is_empty() {
            return Err(Error::PreconditionViolated("row selection is empty".into()));
        }
        let idx = rows.as_slice();
        Ok(Self::from_fn(rows.len(), self.cols, |r, c| {
            self.get(idx[r], c)
        }))
    }

    /// Checks `m >= n` and `grank(bar(M)) > n - k`.
    pub fn standing_assumption(&self, k: usize) -> Result<StandingAssumption> {
        if k == 0 || k > self.rows {
            return Err(Error::InvalidK { k, n: self.rows });
        }
        let grank_bar = generic_rank(
            self,
            &RowSet::full(self.rows),
            &ColumnSet::full(self.cols),
            QueryMode::AsZero,
        )?;
        let wide = self.cols >= self.rows;
        let rank_exceeds = grank_bar + k > self.rows;
        Ok(StandingAssumption {
            wide,
            grank_bar,
            target_rank: self.rows - k,
            rank_exceeds,
        })
    }
}

/// Outcome of the standing assumption check, with enough detail to say which
/// clause failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandingAssumption {
    pub wide: bool,
    pub grank_bar: usize,
    pub target_rank: usize,
    pub rank_exceeds: bool,
}

impl StandingAssumption {
    pub fn holds(&self) -> bool {
        self.wide && self.rank_exceeds
    }

    pub fn diagnostic(&self) -> String {
        match (self.wide, self.rank_exceeds) {
            (true, true) => format!(
                "assumption holds: m >= n and grank(bar M) = {} > {}",
                self.grank_bar, self.target_rank
            ),
            (false, _) => "assumption fails: fewer columns than rows".to_string(),
            (true, false) => format!(
                "assumption fails: grank(bar M) = {} <= target rank {}",
                self.grank_bar, self.target_rank
            ),
        }
    }
}

/// Parses the line-oriented text format: one row per line over `0*?`,
/// whitespace between symbols is ignored, `#` starts a comment.
pub fn parse_pattern(text: &str) -> Result<PatternMatrix, ParseError> {
    let mut entries = Vec::new();
    let mut width: Option<usize> = None;
    let mut rows = 0usize;
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut row_len = 0usize;
        for ch in line.chars() {
            if ch.is_whitespace() {
                continue;
            }
            match EntryKind::from_symbol(ch) {
                Some(kind) => {
                    entries.push(kind);
                    row_len += 1;
                }
                None => {
                    return Err(ParseError::IllegalCharacter {
                        line: line_no + 1,
                        row: rows + 1,
                        col: row_len + 1,
                        ch,
                    })
                }
            }
        }
        if row_len == 0 {
            continue;
        }
        match width {
            None => width = Some(row_len),
            Some(w) if w != row_len => {
                return Err(ParseError::RaggedRows {
                    line: line_no + 1,
                    expected: w,
                    found: row_len,
                })
            }
            Some(_) => {}
        }
        rows += 1;
    }
    match width {
        None => Err(ParseError::Empty),
        Some(cols) => Ok(PatternMatrix {
            rows,
            cols,
            entries,
        }),
    }
}

impl FromStr for PatternMatrix {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse_pattern(s)
    }
}

/// Canonical text: one row per line, no separators, trailing newline.
impl fmt::Display for PatternMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c).symbol())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
