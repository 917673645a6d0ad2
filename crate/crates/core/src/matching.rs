//! Bipartite graph of a pattern and generic rank via maximum matching.
//!
//! Rows are the left vertex class, columns the right one; every nonzero
//! symbol is an edge labelled `Star` or `Query`. Adjacency is kept in
//! ascending vertex order, and Hopcroft–Karp explores vertices in that order,
//! so matched-pair witnesses are reproducible.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{ColumnSet, EntryKind, PatternMatrix, RowSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeLabel {
    Star,
    Query,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelSet {
    pub star: bool,
    pub query: bool,
}

impl LabelSet {
    pub const STAR: LabelSet = LabelSet {
        star: true,
        query: false,
    };
    pub const QUERY: LabelSet = LabelSet {
        star: false,
        query: true,
    };
    pub const ALL: LabelSet = LabelSet {
        star: true,
        query: true,
    };

    pub fn contains(self, label: EdgeLabel) -> bool {
        match label {
            EdgeLabel::Star => self.star,
            EdgeLabel::Query => self.query,
        }
    }
}

/// How `?` entries are treated by [`generic_rank`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryMode {
    /// Fail with `QueryEntryPresent` if the submatrix holds a `?`.
    Reject,
    /// Count `?` as generic entries (rank of the hat pattern).
    AsStar,
    /// Drop `?` entries (rank of the bar pattern).
    AsZero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternBipartiteGraph {
    rows: usize,
    cols: usize,
    row_adj: Vec<Vec<(usize, EdgeLabel)>>,
}

pub fn build_graph(m: &PatternMatrix) -> PatternBipartiteGraph {
    PatternBipartiteGraph::from_pattern(m)
}

impl PatternBipartiteGraph {
    pub fn from_pattern(m: &PatternMatrix) -> Self {
        let row_adj = (0..m.rows())
            .map(|r| {
                (0..m.cols())
                    .filter_map(|c| match m.get(r, c) {
                        EntryKind::Zero => None,
                        EntryKind::Star => Some((c, EdgeLabel::Star)),
                        EntryKind::Query => Some((c, EdgeLabel::Query)),
                    })
                    .collect()
            })
            .collect();
        PatternBipartiteGraph {
            rows: m.rows(),
            cols: m.cols(),
            row_adj,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn edge_count(&self) -> usize {
        self.row_adj.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EdgeLabel)> + '_ {
        self.row_adj
            .iter()
            .enumerate()
            .flat_map(|(r, adj)| adj.iter().map(move |&(c, l)| (r, c, l)))
    }

    pub fn label(&self, row: usize, col: usize) -> Option<EdgeLabel> {
        self.row_adj[row]
            .iter()
            .find(|&&(c, _)| c == col)
            .map(|&(_, l)| l)
    }

    /// Maximum matching of the subgraph induced by `rows` x `cols`, using
    /// only edges whose label is in `labels`.
    pub fn max_matching(
        &self,
        rows: &RowSet,
        cols: &ColumnSet,
        labels: LabelSet,
    ) -> Result<MatchingResult> {
        rows.check_bound(self.rows)?;
        cols.check_bound(self.cols)?;
        let local = self.local_adjacency(rows, cols, labels);
        let matching = hopcroft_karp(&local, cols.len());
        let rows_idx = rows.as_slice();
        let cols_idx = cols.as_slice();
        let pairs = matching
            .left
            .iter()
            .enumerate()
            .filter_map(|(l, m)| m.map(|r| (rows_idx[l], cols_idx[r])))
            .collect();
        Ok(MatchingResult { pairs })
    }

    /// Left-local adjacency: for each selected row, the positions in `cols`
    /// of its admissible neighbours, ascending.
    fn local_adjacency(
        &self,
        rows: &RowSet,
        cols: &ColumnSet,
        labels: LabelSet,
    ) -> Vec<Vec<usize>> {
        let mut col_pos = vec![usize::MAX; self.cols];
        for (pos, c) in cols.iter().enumerate() {
            col_pos[c] = pos;
        }
        rows.iter()
            .map(|r| {
                self.row_adj[r]
                    .iter()
                    .filter(|&&(c, l)| col_pos[c] != usize::MAX && labels.contains(l))
                    .map(|&(c, _)| col_pos[c])
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingResult {
    pairs: Vec<(usize, usize)>,
}

impl MatchingResult {
    pub fn cardinality(&self) -> usize {
        self.pairs.len()
    }

    /// Matched `(row, col)` pairs, 0-based, ordered by row.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

pub(crate) struct Matching {
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
    pub size: usize,
}

const UNREACHED: usize = usize::MAX;

/// Hopcroft–Karp on a bipartite graph given by left adjacency lists.
pub(crate) fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> Matching {
    let n_left = adj.len();
    let mut left: Vec<Option<usize>> = vec![None; n_left];
    let mut right: Vec<Option<usize>> = vec![None; n_right];
    let mut dist = vec![UNREACHED; n_left];
    let mut next_edge = vec![0usize; n_left];
    let mut size = 0;

    loop {
        // BFS layering from free left vertices.
        let mut queue = VecDeque::new();
        for l in 0..n_left {
            if left[l].is_none() {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = UNREACHED;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                match right[r] {
                    None => found = true,
                    Some(l2) if dist[l2] == UNREACHED => {
                        dist[l2] = dist[l] + 1;
                        queue.push_back(l2);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        next_edge.iter_mut().for_each(|e| *e = 0);
        for l in 0..n_left {
            if left[l].is_none()
                && augment(l, adj, &mut left, &mut right, &mut dist, &mut next_edge)
            {
                size += 1;
            }
        }
    }
    Matching { left, right, size }
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    left: &mut [Option<usize>],
    right: &mut [Option<usize>],
    dist: &mut [usize],
    next_edge: &mut [usize],
) -> bool {
    while next_edge[l] < adj[l].len() {
        let r = adj[l][next_edge[l]];
        next_edge[l] += 1;
        let ok = match right[r] {
            None => true,
            Some(l2) => dist[l2] == dist[l] + 1 && augment(l2, adj, left, right, dist, next_edge),
        };
        if ok {
            left[l] = Some(r);
            right[r] = Some(l);
            return true;
        }
    }
    dist[l] = UNREACHED;
    false
}

fn labels_for(
    m: &PatternMatrix,
    rows: &RowSet,
    cols: &ColumnSet,
    mode: QueryMode,
) -> Result<LabelSet> {
    match mode {
        QueryMode::Reject => {
            if let Some((r, c)) = m.has_query_in(rows, cols) {
                return Err(Error::QueryEntryPresent {
                    row: r + 1,
                    col: c + 1,
                });
            }
            Ok(LabelSet::STAR)
        }
        QueryMode::AsStar => Ok(LabelSet::ALL),
        QueryMode::AsZero => Ok(LabelSet::STAR),
    }
}

/// Generic rank of `M[rows, cols]`.
pub fn generic_rank(
    m: &PatternMatrix,
    rows: &RowSet,
    cols: &ColumnSet,
    mode: QueryMode,
) -> Result<usize> {
    rows.check_bound(m.rows())?;
    cols.check_bound(m.cols())?;
    let labels = labels_for(m, rows, cols, mode)?;
    let graph = PatternBipartiteGraph::from_pattern(m);
    let local = graph.local_adjacency(rows, cols, labels);
    Ok(hopcroft_karp(&local, cols.len()).size)
}

/// Generic rank of the whole bar pattern.
pub fn grank_bar(m: &PatternMatrix) -> usize {
    generic_rank(
        m,
        &RowSet::full(m.rows()),
        &ColumnSet::full(m.cols()),
        QueryMode::AsZero,
    )
    .expect("full index sets are in range")
}

/// For every row `j` of the pattern, the generic rank of `M[J_n \ {j}, cols]`.
///
/// One maximum matching is computed on all rows; each deletion then drops the
/// deleted row's matched edge and searches a single augmenting path from the
/// freed column, so the answer is either the full rank or one less.
pub fn row_deleted_ranks(
    m: &PatternMatrix,
    cols: &ColumnSet,
    mode: QueryMode,
) -> Result<RowDeletionRanks> {
    let rows = RowSet::full(m.rows());
    cols.check_bound(m.cols())?;
    let labels = labels_for(m, &rows, cols, mode)?;
    let graph = PatternBipartiteGraph::from_pattern(m);
    let local = graph.local_adjacency(&rows, cols, labels);
    let base = hopcroft_karp(&local, cols.len());

    let mut col_adj: Vec<Vec<usize>> = vec![Vec::new(); cols.len()];
    for (row, adj) in local.iter().enumerate() {
        for &c in adj {
            col_adj[c].push(row);
        }
    }

    let mut visited = vec![false; m.rows()];
    let without = (0..m.rows())
        .map(|deleted| match base.left[deleted] {
            None => base.size,
            Some(freed) => {
                visited.iter_mut().for_each(|v| *v = false);
                visited[deleted] = true;
                if reaches_free_row(freed, &col_adj, &base.left, &base.right, &mut visited) {
                    base.size
                } else {
                    base.size - 1
                }
            }
        })
        .collect();
    Ok(RowDeletionRanks {
        full: base.size,
        without,
    })
}

/// Alternating-path search from column `col` to an unmatched row. The base
/// matching is left untouched; only existence matters.
fn reaches_free_row(
    col: usize,
    col_adj: &[Vec<usize>],
    left: &[Option<usize>],
    right: &[Option<usize>],
    visited: &mut [bool],
) -> bool {
    for &row in &col_adj[col] {
        if visited[row] {
            continue;
        }
        visited[row] = true;
        match left[row] {
            None => return true,
            Some(next) => {
                if right[next] == Some(row) && reaches_free_row(next, col_adj, left, right, visited)
                {
                    return true;
                }
            }
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowDeletionRanks {
    pub full: usize,
    pub without: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::IndexSet;

    fn p(s: &str) -> PatternMatrix {
        s.parse().unwrap()
    }

    fn set(one_based: &[usize]) -> IndexSet {
        IndexSet::from_one_based(one_based.iter().copied()).unwrap()
    }

    const EXAMPLE2: &str = "**0?\n0?*0\n**?*";

    #[test]
    fn graph_labels_follow_entries() {
        let g = build_graph(&p(EXAMPLE2));
        assert_eq!(g.label(2, 2), Some(EdgeLabel::Query));
        assert_eq!(g.label(0, 0), Some(EdgeLabel::Star));
        assert_eq!(g.label(0, 2), None);
        assert_eq!(g.edge_count(), 9);

        let zero = build_graph(&PatternMatrix::filled(2, 3, EntryKind::Zero));
        assert_eq!(zero.edge_count(), 0);
        let full = build_graph(&PatternMatrix::filled(2, 2, EntryKind::Star));
        assert_eq!(full.edge_count(), 4);
        assert!(full.edges().all(|(_, _, l)| l == EdgeLabel::Star));
    }

    #[test]
    fn matchings_on_example_two() {
        let g = build_graph(&p(EXAMPLE2));
        let all = g
            .max_matching(&RowSet::full(3), &set(&[1, 2]), LabelSet::ALL)
            .unwrap();
        assert_eq!(all.cardinality(), 2);
        let drop3 = g
            .max_matching(&set(&[1, 2]), &set(&[1, 2]), LabelSet::ALL)
            .unwrap();
        assert_eq!(drop3.cardinality(), 2);
        assert_eq!(drop3.pairs(), &[(0, 0), (1, 1)]);
        for &(r, c) in all.pairs() {
            assert!(g.label(r, c).is_some());
        }
    }

    #[test]
    fn edgeless_graph_matches_nothing() {
        let g = build_graph(&PatternMatrix::filled(3, 4, EntryKind::Zero));
        let mm = g
            .max_matching(&RowSet::full(3), &ColumnSet::full(4), LabelSet::ALL)
            .unwrap();
        assert_eq!(mm.cardinality(), 0);
    }

    #[test]
    fn generic_rank_examples() {
        let ex1 = p("*?*?\n**?0");
        assert_eq!(grank_bar(&ex1), 2);
        let hat3 = p("*??*\n***?\n000*").hat();
        assert_eq!(
            generic_rank(&hat3, &RowSet::full(3), &set(&[1]), QueryMode::Reject).unwrap(),
            1
        );
        let zero = PatternMatrix::filled(2, 2, EntryKind::Zero);
        assert_eq!(
            generic_rank(
                &zero,
                &RowSet::full(2),
                &ColumnSet::full(2),
                QueryMode::Reject
            )
            .unwrap(),
            0
        );
    }

    #[test]
    fn reject_mode_refuses_queries() {
        let m = p(EXAMPLE2);
        let err =
            generic_rank(&m, &RowSet::full(3), &ColumnSet::full(4), QueryMode::Reject).unwrap_err();
        assert_eq!(err, Error::QueryEntryPresent { row: 1, col: 4 });
        assert_eq!(
            generic_rank(&m, &RowSet::full(3), &ColumnSet::full(4), QueryMode::AsStar).unwrap(),
            3
        );
    }

    #[test]
    fn out_of_range_sets() {
        let m = p(EXAMPLE2);
        let err = generic_rank(&m, &set(&[4]), &ColumnSet::full(4), QueryMode::AsStar).unwrap_err();
        assert_eq!(err, Error::IndexOutOfRange { index: 4, bound: 3 });
    }

    #[test]
    fn row_deletion_matches_recomputation() {
        let m = p("**0?\n0**0\n**?*");
        let cols = set(&[1, 2]);
        let ranks = row_deleted_ranks(&m, &cols, QueryMode::Reject).unwrap();
        assert_eq!(ranks.full, 2);
        for j in 0..3 {
            let rows = RowSet::full(3).without(j);
            assert_eq!(
                ranks.without[j],
                generic_rank(&m, &rows, &cols, QueryMode::Reject).unwrap()
            );
        }
    }
}
