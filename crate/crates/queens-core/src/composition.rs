//! Partial queen placements.
//!
//! A composition assigns at most one queen to every row of an `n x n` board.
//! Row `i` holds either a column in `1..=n` or `0` for "no queen yet". The
//! type only guarantees well-formedness (entries in range); whether the
//! placed queens actually attack each other is the validator's business.

use std::fmt;

/// A partial placement: one optional queen per row.
///
/// Rows and columns are 1-based throughout the public API, matching the
/// convention used everywhere else in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    n: usize,
    /// `cols[i - 1]` is the queen column of row `i`, `0` if the row is empty.
    cols: Vec<usize>,
}

/// Why a raw entry vector cannot become a [`Composition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompositionError {
    ZeroSize,
    WrongLength { expected: usize, found: usize },
    EntryOutOfRange { row: usize, value: usize, bound: usize },
}

impl fmt::Display for CompositionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompositionError::ZeroSize => write!(f, "board size must be at least 1"),
            CompositionError::WrongLength { expected, found } => {
                write!(f, "expected {expected} row entries, found {found}")
            }
            CompositionError::EntryOutOfRange { row, value, bound } => {
                write!(f, "row {row} entry {value} is outside 0..={bound}")
            }
        }
    }
}

impl std::error::Error for CompositionError {}

impl Composition {
    /// Builds a composition from raw per-row entries (`0` = empty row).
    pub fn new(n: usize, cols: Vec<usize>) -> Result<Self, CompositionError> {
        if n == 0 {
            return Err(CompositionError::ZeroSize);
        }
        if cols.len() != n {
            return Err(CompositionError::WrongLength {
                expected: n,
                found: cols.len(),
            });
        }
        if let Some((idx, &value)) = cols.iter().enumerate().find(|&(_, &c)| c > n) {
            return Err(CompositionError::EntryOutOfRange {
                row: idx + 1,
                value,
                bound: n,
            });
        }
        Ok(Self { n, cols })
    }

    /// The all-empty composition.
    ///
    /// # Panics
    ///
    /// Panics if `n` is zero.
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "board size must be at least 1");
        Self {
            n,
            cols: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of placed queens (nonzero entries).
    pub fn queen_count(&self) -> usize {
        self.cols.iter().filter(|&&c| c != 0).count()
    }

    pub fn is_full(&self) -> bool {
        self.cols.iter().all(|&c| c != 0)
    }

    /// Queen column of `row` (1-based), `0` if the row is empty.
    ///
    /// # Panics
    ///
    /// Panics if `row` is not in `1..=n`.
    pub fn col_in_row(&self, row: usize) -> usize {
        assert!(
            (1..=self.n).contains(&row),
            "row {row} outside 1..={}",
            self.n
        );
        self.cols[row - 1]
    }

    /// Iterates `(row, col)` pairs over all rows, empty ones included.
    pub fn rows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cols.iter().enumerate().map(|(i, &c)| (i + 1, c))
    }

    /// Iterates `(row, col)` pairs of placed queens only.
    pub fn queens(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows().filter(|&(_, c)| c != 0)
    }

    /// Raw per-row entries, `cols()[i - 1]` belonging to row `i`.
    pub fn entries(&self) -> &[usize] {
        &self.cols
    }

    /// Places or replaces the queen of `row`.
    ///
    /// # Panics
    ///
    /// Panics if `row` or `col` is out of range.
    pub fn set(&mut self, row: usize, col: usize) {
        assert!((1..=self.n).contains(&row));
        assert!((1..=self.n).contains(&col));
        self.cols[row - 1] = col;
    }

    /// Empties `row`.
    ///
    /// # Panics
    ///
    /// Panics if `row` is out of range.
    pub fn clear(&mut self, row: usize) {
        assert!((1..=self.n).contains(&row));
        self.cols[row - 1] = 0;
    }

    /// Mirror image across the vertical axis: every queen at column `j`
    /// moves to column `n + 1 - j`.
    ///
    /// Attack relations are preserved under the mirror, so the complement of
    /// a consistent composition is consistent, and the complement of a full
    /// solution is a full solution.
    pub fn complement(&self) -> Composition {
        let cols = self
            .cols
            .iter()
            .map(|&c| if c == 0 { 0 } else { self.n + 1 - c })
            .collect();
        Self { n: self.n, cols }
    }
}
