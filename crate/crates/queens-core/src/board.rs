//! Board occupancy tracking with O(1) attack checks.
//!
//! Instead of scanning queen pairs, the board keeps one bit per row, column,
//! and diagonal. A cell `(i, j)` (both 1-based) lies on the left diagonal
//! `n + j - i` and the right diagonal `i + j`; left diagonals run `1..=2n-1`,
//! right diagonals `2..=2n`, and the vectors are sized for `2n + 1` bits so
//! those values index them directly (bit 0 and one end bit stay unused). A
//! cell is free exactly when its row, column, and both diagonals are all
//! unmarked, so placement feasibility is four reads.
//!
//! The bit packing keeps the occupancy small enough that enumerating free
//! lines is a word walk and cloning the whole board is cheap; clones are the
//! snapshot mechanism used by the solver's backtracking.
//!
//! The board also records which column each placed queen occupies, so any
//! reachable state can be exported back as a [`Composition`].

use crate::bits;
use crate::composition::Composition;

/// Left (top-right to bottom-left) diagonal index of cell `(i, j)`.
///
/// # Panics
///
/// Panics if `i` or `j` is outside `1..=n`.
#[inline]
pub fn left_diag_index(n: usize, i: usize, j: usize) -> usize {
    assert!((1..=n).contains(&i) && (1..=n).contains(&j));
    n + j - i
}

/// Right (top-left to bottom-right) diagonal index of cell `(i, j)`.
///
/// # Panics
///
/// Panics if `i` or `j` is outside `1..=n`.
#[inline]
pub fn right_diag_index(n: usize, i: usize, j: usize) -> usize {
    assert!((1..=n).contains(&i) && (1..=n).contains(&j));
    i + j
}

/// Which constraint a placement ran into first.
///
/// Checks are ordered column, then left diagonal, then right diagonal; the
/// reported kind is the first violated one in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConflictKind {
    Column,
    LeftDiagonal,
    RightDiagonal,
}

impl std::fmt::Display for ConflictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ConflictKind::Column => "column",
            ConflictKind::LeftDiagonal => "left diagonal",
            ConflictKind::RightDiagonal => "right diagonal",
        })
    }
}

/// First inconsistency found while replaying a composition onto a board.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlacementConflict {
    /// Row whose queen could not be placed.
    pub row: usize,
    /// Column that queen asked for.
    pub col: usize,
    pub kind: ConflictKind,
    /// Queens successfully placed before the conflict (rows scanned in order).
    pub placed_before: usize,
}

/// Mutable board state: per-line occupancy bits plus queen positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Board {
    n: usize,
    /// `queen[i]` = column of the queen in row `i`, 0 if empty. Slot 0 unused.
    queen: Vec<usize>,
    row_used: Vec<u64>,
    col_used: Vec<u64>,
    /// Bit positions follow `left_diag_index`.
    left_diag: Vec<u64>,
    /// Bit positions follow `right_diag_index`.
    right_diag: Vec<u64>,
    placed: usize,
}

impl Board {
    /// An empty `n x n` board.
    ///
    /// # Panics
    ///
    /// Panics if `n` is zero.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "board size must be at least 1");
        Self {
            n,
            queen: vec![0; n + 1],
            row_used: vec![0; bits::words_for(n + 1)],
            col_used: vec![0; bits::words_for(n + 1)],
            left_diag: vec![0; bits::words_for(2 * n + 1)],
            right_diag: vec![0; bits::words_for(2 * n + 1)],
            placed: 0,
        }
    }

    /// Replays a composition row by row (ascending), stopping at the first
    /// queen whose cell is attacked by an earlier one.
    pub fn from_composition(c: &Composition) -> Result<Self, PlacementConflict> {
        let mut board = Board::new(c.n());
        for (row, col) in c.queens() {
            if !board.try_place(row, col) {
                return Err(PlacementConflict {
                    row,
                    col,
                    kind: board.conflict_kind(row, col),
                    placed_before: board.placed,
                });
            }
        }
        Ok(board)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of queens currently on the board.
    pub fn placed(&self) -> usize {
        self.placed
    }

    pub fn is_full(&self) -> bool {
        self.placed == self.n
    }

    /// True when `(i, j)` is attacked by nothing: its row, column, and both
    /// diagonals are all unoccupied.
    #[inline]
    pub fn is_free(&self, i: usize, j: usize) -> bool {
        debug_assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        !bits::test_bit(&self.row_used, i)
            && !bits::test_bit(&self.col_used, j)
            && !bits::test_bit(&self.left_diag, self.n + j - i)
            && !bits::test_bit(&self.right_diag, i + j)
    }

    /// True when both diagonals through `(i, j)` are unoccupied. For callers
    /// that already know the row and column are free, this decides cell
    /// freedom with two reads instead of four.
    #[inline]
    pub fn diags_free(&self, i: usize, j: usize) -> bool {
        debug_assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        !bits::test_bit(&self.left_diag, self.n + j - i) && !bits::test_bit(&self.right_diag, i + j)
    }

    #[inline]
    pub fn row_is_free(&self, i: usize) -> bool {
        debug_assert!((1..=self.n).contains(&i));
        !bits::test_bit(&self.row_used, i)
    }

    #[inline]
    pub fn col_is_free(&self, j: usize) -> bool {
        debug_assert!((1..=self.n).contains(&j));
        !bits::test_bit(&self.col_used, j)
    }

    /// Column of the queen in row `i`, 0 if the row is empty.
    pub fn queen_in_row(&self, i: usize) -> usize {
        assert!((1..=self.n).contains(&i));
        self.queen[i]
    }

    /// Places a queen on a cell that must be free.
    ///
    /// # Panics
    ///
    /// Panics if `(i, j)` is not free; occupied cells are never silently
    /// overwritten.
    pub fn place(&mut self, i: usize, j: usize) {
        assert!(
            self.is_free(i, j),
            "cell ({i}, {j}) is not free for placement"
        );
        self.mark(i, j);
    }

    /// Places a queen if the cell is free; reports whether it did.
    #[inline]
    pub fn try_place(&mut self, i: usize, j: usize) -> bool {
        if self.is_free(i, j) {
            self.mark(i, j);
            true
        } else {
            false
        }
    }

    #[inline]
    fn mark(&mut self, i: usize, j: usize) {
        bits::set_bit(&mut self.row_used, i);
        bits::set_bit(&mut self.col_used, j);
        bits::set_bit(&mut self.left_diag, self.n + j - i);
        bits::set_bit(&mut self.right_diag, i + j);
        self.queen[i] = j;
        self.placed += 1;
    }

    /// First constraint that rejects `(i, j)`, in column / left diagonal /
    /// right diagonal order. The cell's own row being occupied does not
    /// count; callers ask about empty rows.
    fn conflict_kind(&self, i: usize, j: usize) -> ConflictKind {
        if bits::test_bit(&self.col_used, j) {
            ConflictKind::Column
        } else if bits::test_bit(&self.left_diag, self.n + j - i) {
            ConflictKind::LeftDiagonal
        } else {
            debug_assert!(bits::test_bit(&self.right_diag, i + j));
            ConflictKind::RightDiagonal
        }
    }

    /// Exports the current placement.
    pub fn composition(&self) -> Composition {
        Composition::new(self.n, self.queen[1..].to_vec())
            .expect("board state is well-formed by construction")
    }

    /// Rows without a queen, ascending.
    pub fn free_rows(&self) -> Vec<usize> {
        self.unmarked_lines(&self.row_used)
    }

    /// Columns without a queen, ascending.
    pub fn free_cols(&self) -> Vec<usize> {
        self.unmarked_lines(&self.col_used)
    }

    /// Clear bits of `used` within `1..=n`, ascending.
    fn unmarked_lines(&self, used: &[u64]) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.n - self.placed);
        for (w, &word) in used.iter().enumerate() {
            let mut open = !word & line_word_mask(self.n, w);
            while open != 0 {
                out.push(w * 64 + open.trailing_zeros() as usize);
                open &= open - 1;
            }
        }
        out
    }

    /// Free cells of row `i`, ascending by column. Empty if the row itself
    /// is occupied.
    pub fn free_positions_in_row(&self, i: usize) -> Vec<usize> {
        assert!((1..=self.n).contains(&i));
        if !self.row_is_free(i) {
            return Vec::new();
        }
        (1..=self.n).filter(|&j| self.is_free(i, j)).collect()
    }

    /// Number of free cells in row `i`.
    pub fn count_free_in_row(&self, i: usize) -> usize {
        assert!((1..=self.n).contains(&i));
        if !self.row_is_free(i) {
            return 0;
        }
        (1..=self.n).filter(|&j| self.is_free(i, j)).count()
    }
}

/// Bits of word `w` that correspond to line indices in `1..=n`.
fn line_word_mask(n: usize, w: usize) -> u64 {
    let lo = (w * 64).max(1);
    let hi = n.min(w * 64 + 63);
    if lo > hi {
        return 0;
    }
    let width = hi - lo + 1;
    let ones = match width {
        64 => u64::MAX,
        _ => (1 << width) - 1,
    };
    ones << (lo - w * 64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_indices_match_the_index_formulas() {
        assert_eq!(left_diag_index(8, 1, 8), 15);
        assert_eq!(left_diag_index(8, 8, 1), 1);
        assert_eq!(left_diag_index(10, 3, 5), 12);
        assert_eq!(right_diag_index(8, 1, 1), 2);
        assert_eq!(right_diag_index(8, 8, 8), 16);
        assert_eq!(right_diag_index(10, 3, 5), 8);
    }

    #[test]
    #[should_panic]
    fn diagonal_index_rejects_out_of_range_cells() {
        left_diag_index(4, 0, 1);
    }

    #[test]
    fn shared_left_diagonal_is_detected() {
        let mut b = Board::new(4);
        b.place(1, 1);
        // (2, 2) shares left diagonal 4 with (1, 1).
        assert!(!b.is_free(2, 2));
        assert!(b.is_free(2, 3));
        assert!(b.is_free(3, 2));
        assert!(!b.is_free(4, 4));
        assert!(!b.is_free(3, 1), "column 1 is taken");
        assert!(!b.is_free(1, 3), "row 1 is taken");
    }

    #[test]
    fn diags_free_agrees_with_is_free_on_open_lines() {
        let mut b = Board::new(6);
        b.place(2, 5);
        for i in 1..=6 {
            for j in 1..=6 {
                if b.row_is_free(i) && b.col_is_free(j) {
                    assert_eq!(b.diags_free(i, j), b.is_free(i, j), "({i},{j})");
                }
            }
        }
    }

    #[test]
    fn place_updates_counts_and_composition() {
        let mut b = Board::new(5);
        b.place(3, 5);
        b.place(1, 1);
        assert_eq!(b.placed(), 2);
        assert_eq!(b.queen_in_row(3), 5);
        assert_eq!(b.queen_in_row(2), 0);
        assert_eq!(b.composition().entries(), &[1, 0, 5, 0, 0]);
        assert_eq!(b.free_rows(), vec![2, 4, 5]);
        assert_eq!(b.free_cols(), vec![2, 3, 4]);
    }

    #[test]
    #[should_panic(expected = "not free")]
    fn placing_on_an_attacked_cell_panics() {
        let mut b = Board::new(4);
        b.place(1, 1);
        b.place(2, 2);
    }

    #[test]
    fn try_place_reports_refusal_without_mutating() {
        let mut b = Board::new(4);
        assert!(b.try_place(1, 1));
        let before = b.clone();
        assert!(!b.try_place(2, 2));
        assert_eq!(b, before);
    }

    #[test]
    fn from_composition_accepts_consistent_input() {
        let c = Composition::new(10, vec![0, 0, 5, 0, 4, 0, 0, 3, 0, 0]).unwrap();
        let b = Board::from_composition(&c).unwrap();
        assert_eq!(b.placed(), 3);
        assert_eq!(b.composition(), c);
    }

    #[test]
    fn from_composition_reports_the_first_conflict() {
        // (2, 2) shares the left diagonal with (1, 1).
        let c = Composition::new(4, vec![1, 2, 0, 0]).unwrap();
        let err = Board::from_composition(&c).unwrap_err();
        assert_eq!(
            err,
            PlacementConflict {
                row: 2,
                col: 2,
                kind: ConflictKind::LeftDiagonal,
                placed_before: 1
            }
        );

        // Column clash is reported ahead of the diagonals.
        let c = Composition::new(4, vec![1, 0, 1, 0]).unwrap();
        let err = Board::from_composition(&c).unwrap_err();
        assert_eq!(err.kind, ConflictKind::Column);
        assert_eq!(err.row, 3);
    }

    #[test]
    fn free_positions_after_a_corner_queen() {
        let mut b = Board::new(4);
        b.place(1, 1);
        assert_eq!(b.free_positions_in_row(2), vec![3, 4]);
        assert_eq!(b.free_positions_in_row(3), vec![2, 4]);
        assert_eq!(b.free_positions_in_row(4), vec![2, 3]);
        assert_eq!(b.count_free_in_row(1), 0);
    }
}
