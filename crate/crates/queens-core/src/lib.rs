//! n-Queens completion: can a partial placement be extended to a full
//! non-attacking placement?
//!
//! The crate is organized around a handful of small layers:
//!
//! - [`board`]: occupancy state with O(1) attack checks via row, column, and
//!   diagonal vectors; the base everything else builds on.
//! - [`composition`] and [`io`]: the partial-placement value type and its
//!   plain-text file format.
//! - [`validate`]: linear-time consistency checking.
//! - [`models`]: the randomized selection models (paired shuffled lists,
//!   random row and random position, and a deterministic greedy baseline)
//!   that motivate the solver's staging.
//! - [`solver`]: the staged heuristic completion solver itself.
//! - [`oracle`]: exhaustive enumeration and exact completability for small
//!   boards, used to label test data and to cross-check everything above.
//!
//! The solver is probabilistically complete in one direction only: a
//! returned completion is always a verified solution, while a negative
//! verdict is a bounded-effort judgment that can rarely be wrong. The
//! [`oracle`] exists precisely to measure that error rate on boards small
//! enough to brute-force.

mod bits;

pub mod board;
pub mod composition;
pub mod io;
pub mod models;
pub mod oracle;
pub mod rng;
pub mod solver;
pub mod validate;

pub use board::{left_diag_index, right_diag_index, Board, ConflictKind, PlacementConflict};
pub use composition::{Composition, CompositionError};
pub use rng::SeededRng;
pub use validate::{validate, ValidationReport};
