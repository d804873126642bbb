//! Dense projection of the endgame and its damage bookkeeping.
//!
//! Near the end of a solve only a few rows and columns are still open. Both
//! structures here project those survivors onto a dense m x m grid so the
//! endgame can scan candidates without stepping over the filled bulk of the
//! board. Compact indices are 0-based; the maps translate back to original
//! 1-based rows and columns, and diagonal identities are always computed in
//! original coordinates so they stay compatible with the full board.

use crate::bits;
use crate::board::{left_diag_index, right_diag_index, Board};

/// Snapshot of the free rows, free columns, and free cells of a board,
/// re-indexed densely. Immutable; the mutable counterpart that tracks
/// placements is [`DamageMatrix`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactBoard {
    n: usize,
    m: usize,
    row_map: Vec<usize>,
    col_map: Vec<usize>,
    free: Vec<bool>,
}

impl CompactBoard {
    /// Board size the projection was taken from.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of surviving rows (and columns).
    pub fn m(&self) -> usize {
        self.m
    }

    /// Original 1-based row for each compact row, ascending.
    pub fn row_map(&self) -> &[usize] {
        &self.row_map
    }

    /// Original 1-based column for each compact column, ascending.
    pub fn col_map(&self) -> &[usize] {
        &self.col_map
    }

    /// Whether compact cell `(a, b)` was free at projection time.
    pub fn is_free(&self, a: usize, b: usize) -> bool {
        self.free[self.idx(a, b)]
    }

    /// Original 1-based coordinates of compact cell `(a, b)`.
    pub fn original_cell(&self, a: usize, b: usize) -> (usize, usize) {
        (self.row_map[a], self.col_map[b])
    }

    /// Left-diagonal identity of compact cell `(a, b)` on the full board.
    pub fn left_diag_of(&self, a: usize, b: usize) -> usize {
        let (i, j) = self.original_cell(a, b);
        left_diag_index(self.n, i, j)
    }

    /// Right-diagonal identity of compact cell `(a, b)` on the full board.
    pub fn right_diag_of(&self, a: usize, b: usize) -> usize {
        let (i, j) = self.original_cell(a, b);
        right_diag_index(self.n, i, j)
    }

    /// Free cells remaining in compact row `a`.
    pub fn free_count_in_row(&self, a: usize) -> usize {
        (0..self.m).filter(|&b| self.is_free(a, b)).count()
    }

    #[inline]
    fn idx(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.m && b < self.m);
        a * self.m + b
    }
}

/// Projects the open remainder of `board` onto a dense grid.
///
/// Free rows and free columns are taken in ascending order, so compact
/// indices preserve the original ordering. Requires at least one open row.
pub fn block2_compact(board: &Board) -> CompactBoard {
    assert!(
        board.placed() < board.n(),
        "compaction needs at least one open row"
    );
    let row_map = board.free_rows();
    let col_map = board.free_cols();
    let m = row_map.len();
    debug_assert_eq!(m, col_map.len());
    let mut free = Vec::with_capacity(m * m);
    for &i in &row_map {
        for &j in &col_map {
            free.push(board.is_free(i, j));
        }
    }
    CompactBoard {
        n: board.n(),
        m,
        row_map,
        col_map,
        free,
    }
}

/// Mutable endgame state: the compact free grid plus, for every free cell,
/// the number of free cells it would eliminate from *other* open rows if a
/// queen landed on it.
///
/// That count decomposes exactly: a cell in another row is eliminated by at
/// most one of the three attack lines through the candidate (same column,
/// same left diagonal, same right diagonal), because sharing two lines would
/// force it onto the candidate's row. So each line carries a mask of the
/// rows holding a free cell on it, damage is three popcounts, and a
/// placement retires whole lines by sweeping their masks; only the cells
/// actually eliminated are ever touched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DamageMatrix {
    n: usize,
    m: usize,
    row_map: Vec<usize>,
    col_map: Vec<usize>,
    /// Original row -> compact row, `usize::MAX` when not tracked.
    row_of: Vec<usize>,
    /// Original column -> compact column, `usize::MAX` when not tracked.
    col_of: Vec<usize>,
    /// Left-diagonal identity -> slot in `left_rows`; `u32::MAX` for
    /// diagonals that carried no free cell at entry. Fixed after build.
    left_slot: Vec<u32>,
    /// Right-diagonal counterpart of `left_slot`, into `right_rows`.
    right_slot: Vec<u32>,
    /// Free grid, one bit per cell, `row_words` words per compact row. A set
    /// bit means the cell is free, its row open, and its column queenless;
    /// retiring a row or column clears its bits, so iterating a row's set
    /// bits visits exactly its free cells.
    free: Vec<u64>,
    /// Words per row of `free` and per mask in the three line tables.
    row_words: usize,
    /// Per compact column: mask of rows whose cell in it is free. The
    /// transpose of `free`.
    col_rows: Vec<u64>,
    /// Per tracked left diagonal (dense slots): mask of rows whose crossing
    /// cell is free. A row meets a diagonal at most once, so bits are cells.
    left_rows: Vec<u64>,
    /// Right-diagonal counterpart of `left_rows`.
    right_rows: Vec<u64>,
    row_alive: Vec<bool>,
    /// Free cells per compact row; dead rows park at `u16::MAX` so scarcity
    /// scans skip them without a liveness test.
    row_counts: Vec<u16>,
    alive: usize,
}

/// Head of the scarcity ranking: the minimum free-cell count over open
/// rows, how many rows tie at it, and the first three of those in ascending
/// original-row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RiskHead {
    /// Minimum free-cell count; 0 means some open row has starved.
    pub count: usize,
    /// First rows holding the minimum; `rows[..tied]` is meaningful.
    pub rows: [usize; 3],
    /// Rows tied at the minimum, saturating at three: the tie-break draw
    /// never distinguishes past the third.
    pub tied: usize,
}

const UNTRACKED: usize = usize::MAX;
/// Slot marker for diagonals without a tracked mask.
const NO_SLOT: u32 = u32::MAX;
/// `row_counts` resting value for retired rows; above any real count.
const DEAD_ROW: u16 = u16::MAX;

impl DamageMatrix {
    /// Builds the damage state for a fresh projection.
    pub fn new(compact: &CompactBoard) -> Self {
        let n = compact.n();
        let m = compact.m();
        assert!(m < DEAD_ROW as usize, "projection too large to track");
        let mut row_of = vec![UNTRACKED; n + 1];
        for (a, &i) in compact.row_map().iter().enumerate() {
            row_of[i] = a;
        }
        let mut col_of = vec![UNTRACKED; n + 1];
        for (b, &j) in compact.col_map().iter().enumerate() {
            col_of[j] = b;
        }
        let row_words = bits::words_for(m);
        let mut dm = DamageMatrix {
            n,
            m,
            row_map: compact.row_map().to_vec(),
            col_map: compact.col_map().to_vec(),
            row_of,
            col_of,
            left_slot: vec![NO_SLOT; 2 * n + 1],
            right_slot: vec![NO_SLOT; 2 * n + 1],
            free: vec![0; m * row_words],
            row_words,
            col_rows: vec![0; m * row_words],
            left_rows: Vec::new(),
            right_rows: Vec::new(),
            row_alive: vec![true; m],
            row_counts: vec![0; m],
            alive: m,
        };
        for a in 0..m {
            for b in 0..m {
                if compact.is_free(a, b) {
                    bits::set_bit(&mut dm.free[a * row_words..], b);
                    bits::set_bit(&mut dm.col_rows[b * row_words..], a);
                    dm.row_counts[a] += 1;
                    let left = Self::slot_mask(
                        &mut dm.left_slot,
                        &mut dm.left_rows,
                        row_words,
                        compact.left_diag_of(a, b),
                    );
                    bits::set_bit(left, a);
                    let right = Self::slot_mask(
                        &mut dm.right_slot,
                        &mut dm.right_rows,
                        row_words,
                        compact.right_diag_of(a, b),
                    );
                    bits::set_bit(right, a);
                }
            }
        }
        dm
    }

    /// Mask of the diagonal `diag`, allocating its slot on first use.
    fn slot_mask<'a>(
        slots: &mut [u32],
        masks: &'a mut Vec<u64>,
        row_words: usize,
        diag: usize,
    ) -> &'a mut [u64] {
        let slot = match slots[diag] {
            NO_SLOT => {
                let next = (masks.len() / row_words) as u32;
                slots[diag] = next;
                masks.resize(masks.len() + row_words, 0);
                next
            }
            slot => slot,
        };
        &mut masks[slot as usize * row_words..(slot as usize + 1) * row_words]
    }

    /// Open rows still unassigned.
    pub fn alive_rows(&self) -> usize {
        self.alive
    }

    /// Compact row for an original row, if it is tracked and still open.
    pub fn compact_row(&self, row: usize) -> Option<usize> {
        match self.row_of.get(row) {
            Some(&a) if a != UNTRACKED && self.row_alive[a] => Some(a),
            _ => None,
        }
    }

    /// Original column of compact column `b`.
    pub fn original_col(&self, b: usize) -> usize {
        self.col_map[b]
    }

    /// Whether compact cell `(a, b)` is currently free.
    #[inline]
    fn cell_free(&self, a: usize, b: usize) -> bool {
        self.free[a * self.row_words + b / 64] & (1 << (b % 64)) != 0
    }

    /// Damage of placing on compact cell `(a, b)`: free cells eliminated
    /// from other open rows. `None` when the cell is not free or its row is
    /// closed.
    ///
    /// Three popcounts: the cell is free, so each of its lines has a tracked
    /// mask, and each mask includes the cell's own row once.
    pub fn entry(&self, a: usize, b: usize) -> Option<usize> {
        if !self.row_alive[a] || !self.cell_free(a, b) {
            return None;
        }
        let rw = self.row_words;
        let (i, j) = (self.row_map[a], self.col_map[b]);
        let ls = self.left_slot[left_diag_index(self.n, i, j)] as usize;
        let rs = self.right_slot[right_diag_index(self.n, i, j)] as usize;
        let col = bits::count_ones(&self.col_rows[b * rw..(b + 1) * rw]);
        let left = bits::count_ones(&self.left_rows[ls * rw..(ls + 1) * rw]);
        let right = bits::count_ones(&self.right_rows[rs * rw..(rs + 1) * rw]);
        Some(col + left + right - 3)
    }

    /// Free compact columns of the open row `a`, ascending.
    pub fn free_positions(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        debug_assert!(self.row_alive[a]);
        bits::iter_set(&self.free[a * self.row_words..(a + 1) * self.row_words])
    }

    /// Open rows paired with their free-cell counts, stably sorted by count
    /// ascending; ties keep ascending original-row order.
    pub fn ranked_rows(&self) -> Vec<(usize, usize)> {
        let mut ranked: Vec<(usize, usize)> = (0..self.m)
            .filter(|&a| self.row_alive[a])
            .map(|a| (self.row_map[a], self.row_counts[a] as usize))
            .collect();
        ranked.sort_by_key(|&(_, count)| count);
        ranked
    }

    /// The head of [`ranked_rows`](Self::ranked_rows) without building the
    /// ranking: two passes over the flat count array, no allocation. `None`
    /// when every row is assigned.
    ///
    /// This runs once per endgame placement, so both passes are shaped for
    /// the vectorizer: retired rows park above every real count, which frees
    /// the minimum scan from a liveness filter, and the tie gather rejects
    /// whole chunks before looking at lanes.
    pub fn risk_head(&self) -> Option<RiskHead> {
        if self.alive == 0 {
            return None;
        }
        let chunks = self.row_counts.chunks_exact(8);
        let mut lanes = [DEAD_ROW; 8];
        for chunk in chunks.clone() {
            for (lane, &count) in lanes.iter_mut().zip(chunk) {
                *lane = (*lane).min(count);
            }
        }
        let minimum = lanes
            .into_iter()
            .chain(chunks.remainder().iter().copied())
            .min()
            .expect("grid is not empty");
        debug_assert_ne!(minimum, DEAD_ROW);
        let mut head = RiskHead {
            count: minimum as usize,
            rows: [0; 3],
            tied: 0,
        };
        for (c, chunk) in self.row_counts.chunks(8).enumerate() {
            if !chunk.iter().any(|&count| count == minimum) {
                continue;
            }
            for (off, &count) in chunk.iter().enumerate() {
                if count == minimum {
                    head.rows[head.tied] = self.row_map[c * 8 + off];
                    head.tied += 1;
                    if head.tied == 3 {
                        return Some(head);
                    }
                }
            }
        }
        Some(head)
    }

    /// Rewinds the mutable state to `source`, which must be a matrix for the
    /// same projection. Reuses the existing buffers, so a rewind inside a
    /// retry loop costs a memcpy rather than fresh allocations.
    pub fn rewind_to(&mut self, source: &DamageMatrix) {
        debug_assert!(self.n == source.n && self.m == source.m);
        debug_assert!(self.row_map == source.row_map && self.col_map == source.col_map);
        self.free.copy_from_slice(&source.free);
        self.col_rows.copy_from_slice(&source.col_rows);
        self.left_rows.copy_from_slice(&source.left_rows);
        self.right_rows.copy_from_slice(&source.right_rows);
        self.row_alive.copy_from_slice(&source.row_alive);
        self.row_counts.copy_from_slice(&source.row_counts);
        self.alive = source.alive;
    }

    /// Records a queen on original cell `(row, col)` and retires the row.
    ///
    /// Eliminated cells are the rest of row `row` plus, in every other open
    /// row, the at most three cells sharing the queen's column or diagonals;
    /// only those are touched, keeping the update linear in live rows.
    pub fn place(&mut self, row: usize, col: usize) {
        self.place_and_survey(row, col);
    }

    /// [`place`](Self::place) fused with the post-placement
    /// [`risk_head`](Self::risk_head).
    ///
    /// The queen's row, column, and diagonals retire as whole lines. Each
    /// line's mask lists exactly the rows with a free crossing cell, and a
    /// row meets a line in one known column, so the sweeps visit eliminated
    /// cells and nothing else.
    pub fn place_and_survey(&mut self, row: usize, col: usize) -> Option<RiskHead> {
        let a = self.row_of.get(row).copied().unwrap_or(UNTRACKED);
        let b = self.col_of.get(col).copied().unwrap_or(UNTRACKED);
        assert!(
            a != UNTRACKED && b != UNTRACKED && self.row_alive[a],
            "placement must target an open tracked cell"
        );
        assert!(self.cell_free(a, b), "placement cell must be free");
        let rw = self.row_words;
        let (i, j) = (row, col);

        // The whole placement row leaves the grid, its own cell included;
        // unlink every cell from the masks of its three lines.
        for w in 0..rw {
            let mut word = self.free[a * rw + w];
            self.free[a * rw + w] = 0;
            while word != 0 {
                let bb = w * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                bits::clear_bit(&mut self.col_rows[bb * rw..], a);
                let jj = self.col_map[bb];
                let ls = self.left_slot[left_diag_index(self.n, i, jj)] as usize;
                bits::clear_bit(&mut self.left_rows[ls * rw..], a);
                let rs = self.right_slot[right_diag_index(self.n, i, jj)] as usize;
                bits::clear_bit(&mut self.right_rows[rs * rw..], a);
            }
        }
        self.row_alive[a] = false;
        self.row_counts[a] = DEAD_ROW;
        self.alive -= 1;

        // Column hits: every row losing its cell in the queen's column.
        for w in 0..rw {
            let mut word = self.col_rows[b * rw + w];
            self.col_rows[b * rw + w] = 0;
            while word != 0 {
                let x = w * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                bits::clear_bit(&mut self.free[x * rw..], b);
                self.row_counts[x] -= 1;
                let xi = self.row_map[x];
                let ls = self.left_slot[left_diag_index(self.n, xi, j)] as usize;
                bits::clear_bit(&mut self.left_rows[ls * rw..], x);
                let rs = self.right_slot[right_diag_index(self.n, xi, j)] as usize;
                bits::clear_bit(&mut self.right_rows[rs * rw..], x);
            }
        }

        // Left-diagonal hits: row x crosses in column j + (row_map[x] - i),
        // on the board whenever the cell is free.
        let ls = self.left_slot[left_diag_index(self.n, i, j)] as usize;
        for w in 0..rw {
            let mut word = self.left_rows[ls * rw + w];
            self.left_rows[ls * rw + w] = 0;
            while word != 0 {
                let x = w * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                let xi = self.row_map[x];
                let bb = self.col_of[j + xi - i];
                bits::clear_bit(&mut self.free[x * rw..], bb);
                bits::clear_bit(&mut self.col_rows[bb * rw..], x);
                self.row_counts[x] -= 1;
                let rs = self.right_slot[right_diag_index(self.n, xi, j + xi - i)] as usize;
                bits::clear_bit(&mut self.right_rows[rs * rw..], x);
            }
        }

        // Right-diagonal hits: row x crosses in column (i + j) - row_map[x].
        let rs = self.right_slot[right_diag_index(self.n, i, j)] as usize;
        for w in 0..rw {
            let mut word = self.right_rows[rs * rw + w];
            self.right_rows[rs * rw + w] = 0;
            while word != 0 {
                let x = w * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                let xi = self.row_map[x];
                let bb = self.col_of[i + j - xi];
                bits::clear_bit(&mut self.free[x * rw..], bb);
                bits::clear_bit(&mut self.col_rows[bb * rw..], x);
                self.row_counts[x] -= 1;
                let ls = self.left_slot[left_diag_index(self.n, xi, i + j - xi)] as usize;
                bits::clear_bit(&mut self.left_rows[ls * rw..], x);
            }
        }

        self.risk_head()
    }
}

/// Outcome of preparing the endgame.
#[derive(Debug, Clone)]
pub enum Block4Outcome {
    Ready(Block4Data),
    /// Some open row has no free cell left; the branch cannot finish.
    DeadBranch { row: usize },
}

/// Everything the endgame needs: the entry projection, live damage state,
/// and the entry ranking of rows by scarcity.
#[derive(Debug, Clone)]
pub struct Block4Data {
    pub compact: CompactBoard,
    pub damage: DamageMatrix,
    /// `(original row, free-cell count)` ascending by count, ties by row.
    pub ranked_rows: Vec<(usize, usize)>,
}

/// Projects the board, builds the damage state, and ranks the open rows.
/// A row with no free cells makes the branch dead immediately.
pub fn block4_prepare(board: &Board) -> Block4Outcome {
    let compact = block2_compact(board);
    let damage = DamageMatrix::new(&compact);
    let ranked_rows = damage.ranked_rows();
    // Sorted ascending by count, so a starving row surfaces first.
    if let Some(&(row, 0)) = ranked_rows.first() {
        return Block4Outcome::DeadBranch { row };
    }
    Block4Outcome::Ready(Block4Data {
        compact,
        damage,
        ranked_rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::Composition;
    use crate::rng::SeededRng;

    fn board_from(n: usize, entries: Vec<usize>) -> Board {
        let c = Composition::new(n, entries).unwrap();
        Board::from_composition(&c).unwrap()
    }

    /// Pairwise attack predicate, independent of the control vectors.
    fn attacked(queens: &[(usize, usize)], i: usize, j: usize) -> bool {
        queens.iter().any(|&(qi, qj)| {
            qi == i
                || qj == j
                || qi as isize - qj as isize == i as isize - j as isize
                || qi + qj == i + j
        })
    }

    #[test]
    fn empty_board_projects_to_identity() {
        let board = Board::new(5);
        let compact = block2_compact(&board);
        assert_eq!(compact.m(), 5);
        assert_eq!(compact.row_map(), &[1, 2, 3, 4, 5]);
        assert_eq!(compact.col_map(), &[1, 2, 3, 4, 5]);
        for a in 0..5 {
            for b in 0..5 {
                assert!(compact.is_free(a, b));
            }
        }
    }

    #[test]
    fn projection_matches_the_pairwise_oracle() {
        let board = board_from(4, vec![1, 0, 0, 0]);
        let compact = block2_compact(&board);
        assert_eq!(compact.row_map(), &[2, 3, 4]);
        assert_eq!(compact.col_map(), &[2, 3, 4]);
        let queens = [(1usize, 1usize)];
        for a in 0..3 {
            for b in 0..3 {
                let (i, j) = compact.original_cell(a, b);
                assert_eq!(compact.is_free(a, b), !attacked(&queens, i, j), "({i},{j})");
            }
        }
        // Diagonal identities survive the projection.
        assert_eq!(compact.left_diag_of(0, 0), left_diag_index(4, 2, 2));
        assert_eq!(compact.right_diag_of(2, 1), right_diag_index(4, 4, 3));
    }

    #[test]
    fn randomized_projections_match_the_pairwise_oracle() {
        let mut rng = SeededRng::new(11);
        for n in [6, 9, 13] {
            for _ in 0..20 {
                let mut board = Board::new(n);
                let mut queens = Vec::new();
                for _ in 0..n / 2 {
                    let i = rng.uniform(n);
                    let j = rng.uniform(n);
                    if board.is_free(i, j) {
                        board.place(i, j);
                        queens.push((i, j));
                    }
                }
                if board.placed() == n {
                    continue;
                }
                let compact = block2_compact(&board);
                assert_eq!(compact.m(), n - board.placed());
                for a in 0..compact.m() {
                    for b in 0..compact.m() {
                        let (i, j) = compact.original_cell(a, b);
                        assert_eq!(compact.is_free(a, b), !attacked(&queens, i, j));
                    }
                }
            }
        }
    }

    /// Brute-force damage: free cells of other open rows attacked from
    /// `(a, b)`, recomputed from scratch off the current free grid.
    fn damage_recount(dm: &DamageMatrix, a: usize, b: usize) -> usize {
        let (i, j) = (dm.row_map[a], dm.col_map[b]);
        let mut hits = 0;
        for x in 0..dm.m {
            if x == a || !dm.row_alive[x] {
                continue;
            }
            for y in 0..dm.m {
                if !dm.cell_free(x, y) {
                    continue;
                }
                let (xi, yj) = (dm.row_map[x], dm.col_map[y]);
                let diag = xi as isize - yj as isize == i as isize - j as isize
                    || xi + yj == i + j;
                if yj == j || diag {
                    hits += 1;
                }
            }
        }
        hits
    }

    #[test]
    fn corner_start_damage_values_are_exact() {
        let board = board_from(4, vec![1, 0, 0, 0]);
        let compact = block2_compact(&board);
        let dm = DamageMatrix::new(&compact);
        // Row 2 keeps columns 3 and 4; eliminating counts worked by hand.
        let a2 = dm.compact_row(2).unwrap();
        let b3 = 1; // col_map = [2,3,4]
        let b4 = 2;
        assert_eq!(dm.entry(a2, b3), Some(3));
        assert_eq!(dm.entry(a2, b4), Some(2));
        // Attacked cell reports no damage value.
        let b2 = 0;
        assert_eq!(dm.entry(a2, b2), None);
        // Every free cell agrees with the brute-force recount.
        for a in 0..dm.m {
            for b in 0..dm.m {
                if let Some(d) = dm.entry(a, b) {
                    assert_eq!(d, damage_recount(&dm, a, b), "({a},{b})");
                }
            }
        }
    }

    #[test]
    fn incremental_updates_match_recounts_through_random_play() {
        let mut rng = SeededRng::new(23);
        for n in [8, 12, 16] {
            for round in 0..15 {
                let mut board = Board::new(n);
                for _ in 0..n / 3 {
                    let i = rng.uniform(n);
                    let j = rng.uniform(n);
                    let _ = board.try_place(i, j);
                }
                if board.placed() == n {
                    continue;
                }
                let compact = block2_compact(&board);
                let mut dm = DamageMatrix::new(&compact);
                // Walk random free cells until the state dies out.
                loop {
                    let ranked = dm.ranked_rows();
                    if ranked.is_empty() || ranked[0].1 == 0 {
                        break;
                    }
                    for a in 0..dm.m {
                        for b in 0..dm.m {
                            let lhs = dm.entry(a, b);
                            let rhs = (dm.row_alive[a] && dm.cell_free(a, b))
                                .then(|| damage_recount(&dm, a, b));
                            assert_eq!(lhs, rhs, "n={n} round={round} ({a},{b})");
                        }
                    }
                    let &(row, _) = &ranked[rng.index(ranked.len())];
                    let a = dm.compact_row(row).unwrap();
                    let options: Vec<usize> = dm.free_positions(a).collect();
                    let b = options[rng.index(options.len())];
                    let col = dm.original_col(b);
                    dm.place(row, col);
                }
            }
        }
    }

    #[test]
    fn row_counts_and_ranking_stay_consistent() {
        let board = board_from(6, vec![0, 4, 0, 1, 0, 0]);
        let compact = block2_compact(&board);
        let dm = DamageMatrix::new(&compact);
        let ranked = dm.ranked_rows();
        assert_eq!(ranked.len(), 4);
        // Ascending counts, ties in ascending row order.
        for w in ranked.windows(2) {
            assert!(w[0].1 <= w[1].1);
            if w[0].1 == w[1].1 {
                assert!(w[0].0 < w[1].0);
            }
        }
        // Counts agree with the projection.
        for &(row, count) in &ranked {
            let a = dm.compact_row(row).unwrap();
            assert_eq!(count, compact.free_count_in_row(a));
        }
    }

    #[test]
    fn risk_head_matches_the_ranking_through_random_play() {
        let mut rng = SeededRng::new(31);
        for n in [6, 10, 14] {
            let mut board = Board::new(n);
            for _ in 0..n / 3 {
                let i = rng.uniform(n);
                let j = rng.uniform(n);
                let _ = board.try_place(i, j);
            }
            let compact = block2_compact(&board);
            let mut dm = DamageMatrix::new(&compact);
            loop {
                let ranked = dm.ranked_rows();
                match dm.risk_head() {
                    None => {
                        assert!(ranked.is_empty());
                        break;
                    }
                    Some(head) => {
                        assert_eq!(head.count, ranked[0].1);
                        let tied: Vec<usize> = ranked
                            .iter()
                            .take_while(|&&(_, c)| c == head.count)
                            .map(|&(row, _)| row)
                            .collect();
                        assert_eq!(head.tied, tied.len().min(3));
                        for (lhs, rhs) in head.rows.iter().zip(tied.iter()) {
                            assert_eq!(lhs, rhs);
                        }
                        if head.count == 0 {
                            break;
                        }
                        let row = head.rows[0];
                        let a = dm.compact_row(row).unwrap();
                        let b = dm.free_positions(a).next().unwrap();
                        dm.place(row, dm.original_col(b));
                    }
                }
            }
        }
    }

    #[test]
    fn fused_survey_equals_a_fresh_head_after_every_placement() {
        let mut rng = SeededRng::new(47);
        for n in [7, 11, 15] {
            let mut board = Board::new(n);
            for _ in 0..n / 4 {
                let i = rng.uniform(n);
                let j = rng.uniform(n);
                let _ = board.try_place(i, j);
            }
            let compact = block2_compact(&board);
            let mut dm = DamageMatrix::new(&compact);
            loop {
                let head = match dm.risk_head() {
                    None => break,
                    Some(head) if head.count == 0 => break,
                    Some(head) => head,
                };
                let row = head.rows[0];
                let a = dm.compact_row(row).unwrap();
                let b = dm.free_positions(a).next().unwrap();
                let fused = dm.place_and_survey(row, dm.original_col(b));
                assert_eq!(fused, dm.risk_head(), "n={n}");
            }
        }
    }

    #[test]
    fn rewind_restores_the_exact_pre_placement_state() {
        let board = board_from(6, vec![0, 4, 0, 1, 0, 0]);
        let compact = block2_compact(&board);
        let origin = DamageMatrix::new(&compact);
        let mut dm = origin.clone();
        dm.place(3, 6);
        assert_ne!(dm, origin);
        dm.rewind_to(&origin);
        assert_eq!(dm, origin);
    }

    #[test]
    fn placement_retires_the_row_and_prunes_neighbors() {
        let board = board_from(4, vec![1, 0, 0, 0]);
        let compact = block2_compact(&board);
        let mut dm = DamageMatrix::new(&compact);
        dm.place(2, 4);
        assert_eq!(dm.alive_rows(), 2);
        assert_eq!(dm.compact_row(2), None);
        // (3,4) died by column, (4,2) by diagonal; (3,2) and (4,3) survive.
        let a3 = dm.compact_row(3).unwrap();
        let a4 = dm.compact_row(4).unwrap();
        let cols3: Vec<usize> = dm.free_positions(a3).map(|b| dm.original_col(b)).collect();
        let cols4: Vec<usize> = dm.free_positions(a4).map(|b| dm.original_col(b)).collect();
        assert_eq!(cols3, vec![2]);
        assert_eq!(cols4, vec![3]);
        // (3,2) attacks (4,3) diagonally, so this branch starves row 4; the
        // ranking exposes that as a zero count.
        dm.place(3, 2);
        assert_eq!(dm.alive_rows(), 1);
        assert_eq!(dm.ranked_rows(), vec![(4, 0)]);
    }

    #[test]
    fn preparation_flags_starved_rows() {
        // (1,1) and (2,3) pin row 3: columns 2 and 4 both fall on diagonals
        // of (2,3), and columns 1 and 3 are taken.
        let board = board_from(4, vec![1, 3, 0, 0]);
        assert!(board.free_positions_in_row(3).is_empty());
        match block4_prepare(&board) {
            Block4Outcome::DeadBranch { row } => assert_eq!(row, 3),
            Block4Outcome::Ready(_) => panic!("starved row must kill the branch"),
        }
        // A survivable start is reported ready, scarcest row first.
        let board = board_from(4, vec![1, 0, 0, 0]);
        match block4_prepare(&board) {
            Block4Outcome::Ready(data) => {
                assert_eq!(data.compact.m(), 3);
                assert!(data.ranked_rows.iter().all(|&(_, count)| count >= 1));
            }
            Block4Outcome::DeadBranch { .. } => panic!("branch is live"),
        }
    }
}
