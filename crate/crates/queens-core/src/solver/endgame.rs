//! Final filling stage: scarcest-row placement under the damage metric.
//!
//! Once the board is nearly full the solver stops sampling blindly and works
//! the remaining rows in order of scarcity. Each step takes the row with the
//! fewest free positions (minimum risk) and, inside it, the position that
//! eliminates the fewest free cells elsewhere (minimum damage). Both rules
//! break ties by a bounded random choice, which is what the retry loop in
//! [`block5_run`] re-rolls.

use crate::board::Board;
use crate::rng::SeededRng;

use super::compact::{Block4Data, DamageMatrix, RiskHead};
use super::SolverConfig;

/// Picks the scarcest row from a ranking produced by
/// [`DamageMatrix::ranked_rows`].
///
/// Unique minimum: that row. Exactly two tied at the minimum: uniform pick
/// between them. Three or more tied: uniform pick among the first three in
/// ranked order.
pub fn min_risk_select(ranked: &[(usize, usize)], rng: &mut SeededRng) -> usize {
    assert!(!ranked.is_empty(), "ranking must contain at least one row");
    debug_assert!(ranked.windows(2).all(|w| w[0].1 <= w[1].1));
    debug_assert!(ranked[0].1 >= 1, "rows must keep at least one position");
    let minimum = ranked[0].1;
    let tied = ranked
        .iter()
        .take_while(|&&(_, count)| count == minimum)
        .count();
    match tied {
        1 => ranked[0].0,
        2 => ranked[rng.index(2)].0,
        _ => ranked[rng.index(3)].0,
    }
}

/// [`min_risk_select`] applied to a precomputed ranking head; same tie
/// rules, same random draws, no ranking allocation.
fn min_risk_from_head(head: &RiskHead, rng: &mut SeededRng) -> usize {
    debug_assert!(head.count >= 1 && head.tied >= 1);
    match head.tied {
        1 => head.rows[0],
        2 => head.rows[rng.index(2)],
        _ => head.rows[rng.index(3)],
    }
}

/// Picks the cheapest position in `row` (an original index) under the
/// damage metric.
///
/// Unique minimum: that position. Two or more tied: uniform pick between
/// the first two tied positions in ascending column order. Returns the
/// original column.
pub fn min_damage_select(dm: &DamageMatrix, row: usize, rng: &mut SeededRng) -> usize {
    let a = dm
        .compact_row(row)
        .expect("selection requires an open tracked row");
    let mut minimum = usize::MAX;
    let mut tied = [0usize; 2];
    let mut tied_len = 0usize;
    for b in dm.free_positions(a) {
        let damage = dm.entry(a, b).expect("free positions carry a damage value");
        if damage < minimum {
            minimum = damage;
            tied[0] = b;
            tied_len = 1;
        } else if damage == minimum && tied_len < 2 {
            tied[1] = b;
            tied_len = 2;
        }
    }
    assert!(tied_len >= 1, "row must keep at least one free position");
    let b = if tied_len == 1 {
        tied[0]
    } else {
        tied[rng.index(2)]
    };
    dm.original_col(b)
}

/// Verdict of one endgame engagement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block5Outcome {
    /// `board` holds a full solution.
    Complete,
    /// Every seed placement and retry died; `board` is back at entry state.
    Exhausted,
}

/// Drives the endgame from the prepared state until the board completes or
/// the seeded retry budget runs out.
///
/// Outer cycle: entry rows in ranked (scarcest-first) order. Middle cycle:
/// that row's entry free positions in ascending column order. Each (row,
/// position) pair seeds up to `config.repeat_bound` attempts; an attempt
/// rewinds the damage state, fixes the seed placement, then extends by the
/// minimum-risk and minimum-damage rules until every row is assigned or one
/// starves. The board itself is written only when an attempt completes, so
/// on exhaustion it is untouched. Returns the outcome and the number of
/// dead-ended attempts. Random tie-breaks are not replayed across attempts;
/// retrying the same seed can therefore explore a different branch.
pub fn block5_run(
    board: &mut Board,
    prep: &Block4Data,
    config: &SolverConfig,
    rng: &mut SeededRng,
) -> (Block5Outcome, u64) {
    assert!(config.repeat_bound >= 1, "at least one attempt per seed");
    debug_assert_eq!(
        board.placed() + prep.damage.alive_rows(),
        board.n(),
        "preparation must describe this board"
    );
    let mut dm = prep.damage.clone();
    let mut placements: Vec<(usize, usize)> = Vec::with_capacity(dm.alive_rows());
    let mut repeats: u64 = 0;
    for &(row, _) in &prep.ranked_rows {
        let a = prep
            .damage
            .compact_row(row)
            .expect("entry ranking only lists open rows");
        for b in 0..prep.compact.m() {
            if !prep.compact.is_free(a, b) {
                continue;
            }
            let col = prep.compact.col_map()[b];
            for _ in 0..config.repeat_bound {
                dm.rewind_to(&prep.damage);
                placements.clear();
                let head = dm.place_and_survey(row, col);
                placements.push((row, col));
                if extend_to_completion(&mut dm, head, &mut placements, rng) {
                    for &(i, j) in &placements {
                        board.place(i, j);
                    }
                    return (Block5Outcome::Complete, repeats);
                }
                repeats += 1;
            }
        }
    }
    (Block5Outcome::Exhausted, repeats)
}

/// Greedy extension under the two selection rules, recording placements.
/// `head` is the scarcity survey left by the placement before the call.
/// True when every open row got a queen; false at the first starved row.
fn extend_to_completion(
    dm: &mut DamageMatrix,
    mut head: Option<RiskHead>,
    placements: &mut Vec<(usize, usize)>,
    rng: &mut SeededRng,
) -> bool {
    loop {
        let current = match head {
            None => return true,
            Some(current) => current,
        };
        if current.count == 0 {
            return false;
        }
        let row = min_risk_from_head(&current, rng);
        let col = min_damage_select(dm, row, rng);
        head = dm.place_and_survey(row, col);
        placements.push((row, col));
    }
}
