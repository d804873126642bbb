//! Consistency checking for compositions.
//!
//! A composition is consistent when no two of its queens attack each other.
//! The check replays queens row by row onto a [`Board`], which costs O(n)
//! time and memory regardless of how many queens are placed; pairwise
//! comparison would be quadratic. Because attack relations are symmetric,
//! the verdict cannot depend on replay order, only the reported first
//! conflict can.

use std::fmt;

use crate::board::{Board, PlacementConflict};
use crate::composition::Composition;

/// Outcome of validating one composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    /// Queens placed before the scan stopped; equals the composition's queen
    /// count when valid.
    pub tot_pos: usize,
    /// First conflicting queen in row order, with the constraint it hit
    /// (column checked before left diagonal before right diagonal).
    pub first_conflict: Option<PlacementConflict>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_conflict {
            None => write!(f, "valid, {} queens placed", self.tot_pos),
            Some(c) => write!(
                f,
                "invalid: queen at row {} column {} conflicts on {} ({} placed before it)",
                c.row, c.col, c.kind, self.tot_pos
            ),
        }
    }
}

/// Checks a composition for pairwise attacks.
pub fn validate(c: &Composition) -> ValidationReport {
    match Board::from_composition(c) {
        Ok(board) => ValidationReport {
            valid: true,
            tot_pos: board.placed(),
            first_conflict: None,
        },
        Err(conflict) => ValidationReport {
            valid: false,
            tot_pos: conflict.placed_before,
            first_conflict: Some(conflict),
        },
    }
}
