//! Randomized selection models and the greedy baseline.
//!
//! These are the strategies whose measured behavior shapes the solver's
//! staging. None of them backtrack; each grows a single branch until it
//! completes the board, reaches a requested queen count, or deadlocks.
//!
//! - [`randset_pass`] / [`run_randset`]: shuffle the free-row and free-column
//!   lists, pair them positionally, and keep every pair whose cell is still
//!   free. Very fast, good early on, blind to diagonal congestion.
//! - [`rand_rand_step`] / [`run_rand_rand`]: pick a uniformly random free
//!   row, then a uniformly random free position inside it. Slower per queen
//!   but survives much deeper into the board.
//! - [`sequential_baseline`]: rows in order, always the lowest free column.
//!   A deterministic control that deadlocks early and demonstrates why
//!   naive greedy selection is hopeless.
//!
//! A run is deadlocked as soon as any still-free row has no free position:
//! such a row can never receive a queen later, because constraints only
//! accumulate. [`run_rand_rand`] tracks per-row free counts incrementally (a
//! placement only strips cells along its own column and diagonals), which
//! keeps that check at a few word sweeps per placement.

use std::fmt;

use crate::bits;
use crate::board::Board;
use crate::composition::Composition;
use crate::rng::SeededRng;

/// Why a model run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchStatus {
    /// Every row holds a queen: the branch is a full solution.
    Complete,
    /// The requested queen count was reached before the board filled.
    TargetReached,
    /// Progress became impossible (or a whole pass placed nothing).
    Deadlocked,
}

impl fmt::Display for BranchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchStatus::Complete => "complete",
            BranchStatus::TargetReached => "target_reached",
            BranchStatus::Deadlocked => "deadlocked",
        })
    }
}

/// Outcome of one model run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchResult {
    pub final_composition: Composition,
    /// Final queen count.
    pub placed_count: usize,
    pub status: BranchStatus,
    /// Passes executed by [`run_randset`]; placements made by
    /// [`run_rand_rand`].
    pub pass_count: usize,
}

/// One paired-shuffle pass: shuffles the free rows and free columns, zips
/// them into candidate cells, and places every candidate that is still free
/// when its turn comes. Returns how many queens were placed.
///
/// Constraints accumulate within the pass, so later pairs see the queens
/// placed by earlier ones.
pub fn randset_pass(board: &mut Board, rng: &mut SeededRng) -> usize {
    let mut rows = board.free_rows();
    let mut cols = board.free_cols();
    // One queen per row and per column, so both lists always have equal length.
    debug_assert_eq!(rows.len(), cols.len());
    rng.shuffle(&mut rows);
    rng.shuffle(&mut cols);
    rows.iter()
        .zip(cols.iter())
        .filter(|&(&i, &j)| board.try_place(i, j))
        .count()
}

/// Repeats [`randset_pass`] until the board fills, the queen count reaches
/// `target`, or a whole pass places nothing (deadlock).
///
/// # Panics
///
/// Panics if `target` is not in `1..=n`.
pub fn run_randset(board: &mut Board, rng: &mut SeededRng, target: usize) -> BranchResult {
    assert!((1..=board.n()).contains(&target), "target outside 1..=n");
    let mut passes = 0usize;
    let status = loop {
        if board.is_full() {
            break BranchStatus::Complete;
        }
        if board.placed() >= target {
            break BranchStatus::TargetReached;
        }
        passes += 1;
        if randset_pass(board, rng) == 0 {
            break BranchStatus::Deadlocked;
        }
    };
    BranchResult {
        final_composition: board.composition(),
        placed_count: board.placed(),
        status,
        pass_count: passes,
    }
}

/// One random-row, random-position step: samples a free row uniformly, then
/// a free position within it uniformly, and places a queen there. Returns
/// `false` without placing when the sampled row has no free position.
///
/// # Panics
///
/// Panics if the board is already full.
pub fn rand_rand_step(board: &mut Board, rng: &mut SeededRng) -> bool {
    let rows = board.free_rows();
    assert!(!rows.is_empty(), "no free rows left to sample");
    let i = rows[rng.index(rows.len())];
    let positions = board.free_positions_in_row(i);
    match positions.is_empty() {
        true => false,
        false => {
            let j = positions[rng.index(positions.len())];
            board.place(i, j);
            true
        }
    }
}

/// Bit-vector shadows of a board's occupancy, kept in every shape the
/// attack-line sweeps need.
///
/// Besides the plain open-column and occupied-diagonal vectors there is a
/// live-row mask, reversed copies, and parity-split halves. The point of the
/// extra shapes: for a queen at `(i, j)`, the cell each attack line holds in
/// row `x` has column and diagonal indices that are `x` or `2x` plus a
/// constant, so against a reversed (and, for the `2x` cases, parity-split)
/// copy every line test becomes a vector shifted by a constant.
struct LineShadows {
    n: usize,
    /// Bit `j` set while column `j` is free.
    col_open: Vec<u64>,
    /// Reversed copy: bit `u` mirrors column `n + 1 - u`.
    col_rev: Vec<u64>,
    /// Bit `x` set while row `x` is free.
    rows_live: Vec<u64>,
    /// Bit `d` set while left diagonal `d` is occupied.
    left_occ: Vec<u64>,
    /// Reversed copy: bit `v` mirrors left diagonal `2n - v`.
    left_rev: Vec<u64>,
    /// Parity halves of `left_rev`: bit `u` mirrors bit `2u` or `2u + 1`.
    left_rev_even: Vec<u64>,
    left_rev_odd: Vec<u64>,
    /// Bit `t` set while right diagonal `t` is occupied.
    right_occ: Vec<u64>,
    /// Parity halves of `right_occ`.
    right_even: Vec<u64>,
    right_odd: Vec<u64>,
}

/// Splits an offset `c` of a doubled index `2x + c` into the parity half it
/// selects and the shift within that half.
fn parity_shift(c: isize) -> (isize, isize) {
    let p = c.rem_euclid(2);
    (p, (c - p) / 2)
}

impl LineShadows {
    fn build(board: &Board) -> Self {
        let n = board.n();
        let row_words = bits::words_for(n + 1);
        let diag_words = bits::words_for(2 * n + 1);
        let mut shadows = Self {
            n,
            col_open: vec![0; row_words],
            col_rev: vec![0; row_words],
            rows_live: vec![0; row_words],
            left_occ: vec![0; diag_words],
            left_rev: vec![0; diag_words],
            left_rev_even: vec![0; row_words],
            left_rev_odd: vec![0; row_words],
            right_occ: vec![0; diag_words],
            right_even: vec![0; row_words],
            right_odd: vec![0; row_words],
        };
        for j in board.free_cols() {
            bits::set_bit(&mut shadows.col_open, j);
            bits::set_bit(&mut shadows.col_rev, n + 1 - j);
        }
        for i in board.free_rows() {
            bits::set_bit(&mut shadows.rows_live, i);
        }
        for i in 1..=n {
            let j = board.queen_in_row(i);
            if j != 0 {
                shadows.mark_diagonals(i, j);
            }
        }
        shadows
    }

    /// Marks the two diagonals through `(i, j)` occupied in every shape.
    fn mark_diagonals(&mut self, i: usize, j: usize) {
        let n = self.n;
        bits::set_bit(&mut self.left_occ, n + j - i);
        // Reversed index of left diagonal n + j - i.
        let v = n + i - j;
        bits::set_bit(&mut self.left_rev, v);
        match v % 2 {
            0 => bits::set_bit(&mut self.left_rev_even, v / 2),
            _ => bits::set_bit(&mut self.left_rev_odd, v / 2),
        }
        let t = i + j;
        bits::set_bit(&mut self.right_occ, t);
        match t % 2 {
            0 => bits::set_bit(&mut self.right_even, t / 2),
            _ => bits::set_bit(&mut self.right_odd, t / 2),
        }
    }

    fn retire_row(&mut self, i: usize) {
        bits::clear_bit(&mut self.rows_live, i);
    }

    /// Marks `(i, j)` occupied: closes the column and both diagonals.
    fn occupy(&mut self, i: usize, j: usize) {
        bits::clear_bit(&mut self.col_open, j);
        bits::clear_bit(&mut self.col_rev, self.n + 1 - j);
        self.mark_diagonals(i, j);
    }
}

/// Incrementally maintained free-position counts for every free row.
///
/// A row's free positions resolve against the occupancy shadows with
/// [`bits::masked_count`] and [`bits::masked_select`], and a placement
/// adjusts other rows' counts with one fused sweep over the live-row mask:
/// its set bits are exactly the rows losing a free cell, so nothing else is
/// visited. Exhaustion is latched when any count hits zero, keeping the
/// deadlock check O(1); constraints only accumulate, so a starved row never
/// recovers.
struct FreeCounts {
    n: usize,
    rows: Vec<usize>,
    /// `count[i]` is the free-position count of row `i` while that row is
    /// free; stale once it holds a queen.
    count: Vec<u32>,
    exhausted: bool,
    shadows: LineShadows,
}

impl FreeCounts {
    fn build(board: &Board) -> Self {
        let n = board.n();
        let rows = board.free_rows();
        let shadows = LineShadows::build(board);
        let mut count = vec![0u32; n + 1];
        let mut exhausted = false;
        for &i in &rows {
            let c = bits::masked_count(
                &shadows.col_open,
                &shadows.left_occ,
                n - i,
                &shadows.right_occ,
                i,
            );
            count[i] = c as u32;
            exhausted |= c == 0;
        }
        Self {
            n,
            rows,
            count,
            exhausted,
            shadows,
        }
    }

    fn any_row_exhausted(&self) -> bool {
        self.exhausted
    }

    /// Draws a uniformly random free position of `rows[idx]`.
    fn sample_in_row(&self, idx: usize, rng: &mut SeededRng) -> usize {
        let i = self.rows[idx];
        let free = self.count[i] as usize;
        bits::masked_select(
            &self.shadows.col_open,
            &self.shadows.left_occ,
            self.n - i,
            &self.shadows.right_occ,
            i,
            rng.index(free),
        )
    }

    /// Places `(i, j)` and adjusts the counts of the rows losing a cell.
    ///
    /// One sweep over the live-row mask flags, per 64 rows, the cells
    /// eliminated on the queen's column and two diagonals. Each line is
    /// clear until this placement, so its cell in row `x` survives exactly
    /// when the cell's column is open and the other diagonal through the
    /// cell is too. Both tests shift an occupancy shadow by a constant: the
    /// column line meets left diagonal `n + j - x` (`left_rev` bit
    /// `x + n - j`) and right diagonal `x + j`; the left diagonal's cell
    /// `(x, x + c)` with `c = j - i` has right diagonal `2x + c`, and the
    /// right diagonal's cell `(x, (i + j) - x)` has left diagonal
    /// `n + i + j - 2x` (`left_rev` bit `2x + n - i - j`), the doubled
    /// indices landing in the parity-split halves.
    fn place(&mut self, board: &mut Board, i: usize, j: usize) {
        let placed_idx = self
            .rows
            .binary_search(&i)
            .expect("placed row is a live row");
        // Retire the row first so the sweep only flags other rows.
        self.shadows.retire_row(i);
        let n = self.n;
        let sh = &self.shadows;
        let col_left = bits::Shifted::new(&sh.left_rev, (n - j) as isize);
        let col_right = bits::Shifted::new(&sh.right_occ, j as isize);
        let c = j as isize - i as isize;
        let (parity, shift) = parity_shift(c);
        let ldiag_open = bits::Shifted::new(&sh.col_open, c);
        let ldiag_occ = bits::Shifted::new(
            match parity {
                0 => &sh.right_even,
                _ => &sh.right_odd,
            },
            shift,
        );
        let c = n as isize - (i + j) as isize;
        let (parity, shift) = parity_shift(c);
        let rdiag_open = bits::Shifted::new(&sh.col_rev, c + 1);
        let rdiag_occ = bits::Shifted::new(
            match parity {
                0 => &sh.left_rev_even,
                _ => &sh.left_rev_odd,
            },
            shift,
        );
        for (w, &live) in sh.rows_live.iter().enumerate() {
            if live == 0 {
                continue;
            }
            let col = live & !col_left.word(w) & !col_right.word(w);
            // The open-column factor is sparse, so test it before fetching
            // the occupancy word.
            let left = match live & ldiag_open.word(w) {
                0 => 0,
                open => open & !ldiag_occ.word(w),
            };
            let right = match live & rdiag_open.word(w) {
                0 => 0,
                open => open & !rdiag_occ.word(w),
            };
            for mut hits in [col, left, right] {
                while hits != 0 {
                    let x = w * 64 + hits.trailing_zeros() as usize;
                    hits &= hits - 1;
                    self.count[x] -= 1;
                    self.exhausted |= self.count[x] == 0;
                }
            }
        }
        board.place(i, j);
        self.shadows.occupy(i, j);
        self.rows.remove(placed_idx);
    }
}

/// Repeats [`rand_rand_step`] until the queen count reaches `target`, the
/// board fills, or the branch deadlocks because some still-free row has no
/// free position left (checked after every placement, and once on entry).
///
/// While the run is alive every free row has at least one free position, so
/// each step places exactly one queen; `pass_count` is the placement count.
///
/// # Panics
///
/// Panics if `target` is not in `1..=n`.
pub fn run_rand_rand(board: &mut Board, rng: &mut SeededRng, target: usize) -> BranchResult {
    assert!((1..=board.n()).contains(&target), "target outside 1..=n");
    let mut counts = FreeCounts::build(board);
    let mut steps = 0usize;
    let status = loop {
        if board.is_full() {
            break BranchStatus::Complete;
        }
        if board.placed() >= target {
            break BranchStatus::TargetReached;
        }
        if counts.any_row_exhausted() {
            break BranchStatus::Deadlocked;
        }
        let idx = rng.index(counts.rows.len());
        let i = counts.rows[idx];
        let j = counts.sample_in_row(idx, rng);
        counts.place(board, i, j);
        steps += 1;
    };
    BranchResult {
        final_composition: board.composition(),
        placed_count: board.placed(),
        status,
        pass_count: steps,
    }
}

/// Free-position count of every free row, ascending by row.
pub fn free_position_profile(board: &Board) -> Vec<(usize, usize)> {
    board
        .free_rows()
        .into_iter()
        .map(|i| (i, board.count_free_in_row(i)))
        .collect()
}

/// Profile snapshot taken after one baseline placement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepProfile {
    /// Queens on the board after the placement.
    pub step: usize,
    /// `(row, free positions)` for every row still free, ascending.
    pub row_counts: Vec<(usize, usize)>,
}

/// Full record of a [`sequential_baseline`] run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequentialTrace {
    pub n: usize,
    /// Queens placed before the run stopped.
    pub placed: usize,
    pub completed: bool,
    /// First row that had no free position when its turn came.
    pub stuck_row: Option<usize>,
    pub steps: Vec<StepProfile>,
    pub final_composition: Composition,
}

/// Deterministic greedy control: rows in ascending order, always the
/// lowest-numbered free position, recording the free-position profile after
/// every placement. Stops at the first row with no free position.
pub fn sequential_baseline(n: usize) -> SequentialTrace {
    let mut board = Board::new(n);
    let mut steps = Vec::new();
    for i in 1..=n {
        match board.free_positions_in_row(i).first() {
            None => {
                return SequentialTrace {
                    n,
                    placed: board.placed(),
                    completed: false,
                    stuck_row: Some(i),
                    steps,
                    final_composition: board.composition(),
                }
            }
            Some(&j) => {
                board.place(i, j);
                steps.push(StepProfile {
                    step: board.placed(),
                    row_counts: free_position_profile(&board),
                });
            }
        }
    }
    SequentialTrace {
        n,
        placed: n,
        completed: true,
        stuck_row: None,
        steps,
        final_composition: board.composition(),
    }
}
