//! Exhaustive ground truth for small boards.
//!
//! Everything here is plain depth-first search with its own occupancy masks,
//! kept deliberately independent of [`Board`]'s control vectors so the two
//! implementations can referee each other in tests. Enumeration explores
//! rows in ascending order and columns in ascending order, which makes
//! materialized solution lists canonical (lexicographically sorted by row
//! entries) and reproducible.
//!
//! Costs are exponential, so the entry points carry guards sized for
//! interactive use: full enumeration up to 14x14, completability whenever
//! the board is that small or at most 20 rows are still open. The `_forced`
//! variants skip the guards for callers who understand the blow-up.

use std::fmt;

use crate::board::PlacementConflict;
use crate::composition::Composition;
use crate::validate::validate;

/// Largest board the guarded enumeration accepts.
pub const ENUMERATION_BOARD_LIMIT: usize = 14;
/// Most free rows the guarded completability check accepts on boards larger
/// than [`ENUMERATION_BOARD_LIMIT`].
pub const COMPLETION_FREE_ROW_LIMIT: usize = 20;

/// Result of enumerating all solutions for one board size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub n: usize,
    pub count: u64,
    /// Present when materialization was requested; lexicographically sorted
    /// by row entries.
    pub solutions: Option<Vec<Composition>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    BoardTooLarge { n: usize, limit: usize },
    SearchTooWide { free_rows: usize, limit: usize },
    InconsistentComposition(PlacementConflict),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::BoardTooLarge { n, limit } => {
                write!(f, "board size {n} exceeds the exhaustive-search limit {limit}")
            }
            OracleError::SearchTooWide { free_rows, limit } => {
                write!(
                    f,
                    "{free_rows} free rows exceed the completability limit {limit}"
                )
            }
            OracleError::InconsistentComposition(c) => {
                write!(
                    f,
                    "composition is inconsistent: row {} column {} conflicts on {}",
                    c.row, c.col, c.kind
                )
            }
        }
    }
}

impl std::error::Error for OracleError {}

/// Occupancy masks for the depth-first searches. Independent of `Board` on
/// purpose; diagonals are addressed as `i + j` and `i - j + n`.
struct Masks {
    n: usize,
    col: Vec<bool>,
    sum_diag: Vec<bool>,
    diff_diag: Vec<bool>,
}

impl Masks {
    fn new(n: usize) -> Self {
        Self {
            n,
            col: vec![false; n + 1],
            sum_diag: vec![false; 2 * n + 1],
            diff_diag: vec![false; 2 * n + 1],
        }
    }

    #[inline]
    fn open(&self, i: usize, j: usize) -> bool {
        !self.col[j] && !self.sum_diag[i + j] && !self.diff_diag[i + self.n - j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, value: bool) {
        self.col[j] = value;
        self.sum_diag[i + j] = value;
        self.diff_diag[i + self.n - j] = value;
    }
}

/// Counts (and optionally materializes) every solution of the `n`-queens
/// problem, exploring rows and columns in ascending order.
///
/// Guarded to `n <= 14`; see [`enumerate_solutions_forced`].
pub fn enumerate_solutions(n: usize, materialize: bool) -> Result<EnumerationResult, OracleError> {
    if n > ENUMERATION_BOARD_LIMIT {
        return Err(OracleError::BoardTooLarge {
            n,
            limit: ENUMERATION_BOARD_LIMIT,
        });
    }
    Ok(enumerate_solutions_forced(n, materialize))
}

/// [`enumerate_solutions`] without the size guard. Runtime grows roughly
/// five-fold per increment of `n`.
pub fn enumerate_solutions_forced(n: usize, materialize: bool) -> EnumerationResult {
    assert!(n >= 1, "board size must be at least 1");
    let mut masks = Masks::new(n);
    let mut current = vec![0usize; n];
    let mut out = EnumerationResult {
        n,
        count: 0,
        solutions: materialize.then(Vec::new),
    };
    descend(&mut masks, &mut current, 1, &mut out);
    out
}

fn descend(masks: &mut Masks, current: &mut Vec<usize>, row: usize, out: &mut EnumerationResult) {
    let n = masks.n;
    if row > n {
        out.count += 1;
        if let Some(list) = out.solutions.as_mut() {
            list.push(
                Composition::new(n, current.clone()).expect("search keeps entries in range"),
            );
        }
        return;
    }
    for j in 1..=n {
        if masks.open(row, j) {
            masks.set(row, j, true);
            current[row - 1] = j;
            descend(masks, current, row + 1, out);
            masks.set(row, j, false);
        }
    }
    current[row - 1] = 0;
}

/// Exact completability of a consistent composition, by exhaustive search
/// over its free rows (most-constrained row first, with early cutoff).
///
/// Guarded to boards of at most 14 or at most 20 free rows; see
/// [`exact_completable_forced`].
pub fn exact_completable(c: &Composition) -> Result<bool, OracleError> {
    let free_rows = c.n() - c.queen_count();
    if c.n() > ENUMERATION_BOARD_LIMIT && free_rows > COMPLETION_FREE_ROW_LIMIT {
        return Err(OracleError::SearchTooWide {
            free_rows,
            limit: COMPLETION_FREE_ROW_LIMIT,
        });
    }
    exact_completable_forced(c)
}

/// [`exact_completable`] without the search-width guard.
pub fn exact_completable_forced(c: &Composition) -> Result<bool, OracleError> {
    let report = validate(c);
    if let Some(conflict) = report.first_conflict {
        return Err(OracleError::InconsistentComposition(conflict));
    }
    let mut masks = Masks::new(c.n());
    for (i, j) in c.queens() {
        masks.set(i, j, true);
    }
    let mut open_rows: Vec<usize> = c.rows().filter(|&(_, j)| j == 0).map(|(i, _)| i).collect();
    Ok(complete_search(&mut masks, &mut open_rows))
}

/// True when the open rows admit a joint non-attacking assignment. Picks the
/// row with the fewest candidates first; constraints only tighten, so a row
/// with zero candidates proves the branch dead.
fn complete_search(masks: &mut Masks, open_rows: &mut Vec<usize>) -> bool {
    if open_rows.is_empty() {
        return true;
    }
    let n = masks.n;
    let mut best_idx = 0;
    let mut best_count = usize::MAX;
    for (idx, &i) in open_rows.iter().enumerate() {
        let count = (1..=n).filter(|&j| masks.open(i, j)).count();
        if count < best_count {
            best_count = count;
            best_idx = idx;
            if count == 0 {
                return false;
            }
        }
    }
    let row = open_rows.swap_remove(best_idx);
    for j in 1..=n {
        if masks.open(row, j) {
            masks.set(row, j, true);
            let found = complete_search(masks, open_rows);
            masks.set(row, j, false);
            if found {
                open_rows.push(row);
                // Restore the exact list shape for the caller's next branch.
                let last = open_rows.len() - 1;
                open_rows.swap(best_idx, last);
                return true;
            }
        }
    }
    open_rows.push(row);
    let last = open_rows.len() - 1;
    open_rows.swap(best_idx, last);
    false
}

/// Every full solution extending `c`, in ascending row-entry order. Meant
/// for tiny boards; the solver leans on it below 7x7.
pub(crate) fn completions_of(c: &Composition) -> Vec<Composition> {
    let n = c.n();
    let mut masks = Masks::new(n);
    for (i, j) in c.queens() {
        masks.set(i, j, true);
    }
    let mut current: Vec<usize> = c.entries().to_vec();
    let mut found = Vec::new();
    extend_all(&mut masks, &mut current, 1, &mut found);
    found
}

fn extend_all(
    masks: &mut Masks,
    current: &mut Vec<usize>,
    row: usize,
    found: &mut Vec<Composition>,
) {
    let n = masks.n;
    if row > n {
        found.push(Composition::new(n, current.clone()).expect("entries stay in range"));
        return;
    }
    if current[row - 1] != 0 {
        extend_all(masks, current, row + 1, found);
        return;
    }
    for j in 1..=n {
        if masks.open(row, j) {
            masks.set(row, j, true);
            current[row - 1] = j;
            extend_all(masks, current, row + 1, found);
            masks.set(row, j, false);
            current[row - 1] = 0;
        }
    }
}

/// Labels each composition with its exact completability.
pub fn label_sample(
    compositions: &[Composition],
) -> Result<Vec<(Composition, bool)>, OracleError> {
    compositions
        .iter()
        .map(|c| exact_completable(c).map(|label| (c.clone(), label)))
        .collect()
}
