//! Staged completion of partial boards.
//!
//! A solve pushes a consistent composition through up to three filling
//! regimes: unordered bulk sampling ([`crate::models::run_randset`]) to the
//! first milestone, length-guided sampling ([`crate::models::run_rand_rand`])
//! to the second, then the exact endgame over the compacted remainder. Where
//! the pipeline starts depends on the board size and how full the input
//! already is; small boards skip it entirely and use exhaustive search.
//!
//! Dead ends back the solver up to a snapshotted milestone and retry with
//! fresh randomness. The retry budget is global: when `totSimBound` restores
//! have been spent, the composition is deemed not completable. That verdict
//! can be wrong (rarely), in one direction only; completions are always
//! genuine.

pub mod compact;
pub mod endgame;
pub mod levels;

use std::fmt;
use std::time::{Duration, Instant};

use crate::board::Board;
use crate::composition::Composition;
use crate::models::{run_rand_rand, run_randset, BranchStatus};
use crate::oracle;
use crate::rng::SeededRng;
use crate::validate::{validate, ValidationReport};

pub use compact::{
    block2_compact, block4_prepare, Block4Data, Block4Outcome, CompactBoard, DamageMatrix,
};
pub use endgame::{block5_run, min_damage_select, min_risk_select, Block5Outcome};
pub use levels::{base_levels, entry_block, BaseLevels};

/// Tuning knobs for a solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Attempts per endgame seed placement before the next candidate.
    pub repeat_bound: u32,
    /// Global restore budget; reaching it deems the composition negative.
    pub tot_sim_bound: u32,
    /// Random stream identity; equal seeds replay equal solves.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            repeat_bound: 5,
            tot_sim_bound: 1000,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

/// Deep copy of solver state pinned to a filling milestone, used as a
/// backtrack target.
#[derive(Debug, Clone)]
pub struct LevelSnapshot {
    board: Board,
}

impl LevelSnapshot {
    pub fn capture(board: &Board) -> Self {
        Self {
            board: board.clone(),
        }
    }

    pub fn board(&self) -> &Board {
        &self.board
    }

    /// Fresh working copy of the captured state.
    pub fn restore(&self) -> Board {
        self.board.clone()
    }
}

/// Verdict of a solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// A full solution extending the input.
    Completed(Composition),
    /// Retry budget exhausted; treated as not completable. May rarely be
    /// wrong, the opposite verdict never is.
    DeemedNegative,
}

impl Verdict {
    pub fn is_completed(&self) -> bool {
        matches!(self, Verdict::Completed(_))
    }

    pub fn solution(&self) -> Option<&Composition> {
        match self {
            Verdict::Completed(c) => Some(c),
            Verdict::DeemedNegative => None,
        }
    }
}

/// Counters and timing for one solve.
#[derive(Debug, Clone)]
pub struct SolveStats {
    /// Milestone restores spent, over all levels.
    pub bt_count: u32,
    /// Endgame attempts that dead-ended, over the whole solve.
    pub block5_repeats: u64,
    /// Search time; input validation is excluded.
    pub wall_time: Duration,
    /// Block the pipeline started in: 1, 2 or 4, or 0 for the exhaustive
    /// small-board path.
    pub entry_block: u8,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    pub stats: SolveStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// The input composition has attacking queens; nothing was attempted.
    InvalidComposition(ValidationReport),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::InvalidComposition(report) => {
                write!(f, "composition rejected: {report}")
            }
        }
    }
}

impl std::error::Error for SolveError {}

/// Boards strictly below this size are solved exhaustively.
const PIPELINE_MIN: usize = 7;
/// Boards below this size always backtrack to the entry milestone.
const LOCAL_RETRY_MIN: usize = 50;
/// Every this-many'th backtrack escalates past the local milestone.
const ESCALATION_PERIOD: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    BulkFill,
    Checkpoint,
    GuidedFill,
    Endgame,
}

/// Attempts to extend `c` to a full non-attacking placement.
///
/// Completions always validate and agree with `c` on every occupied row.
/// `DeemedNegative` is a budget verdict, not a proof, except below 7x7
/// where the exhaustive path makes it exact.
pub fn solve(c: &Composition, config: &SolverConfig) -> Result<SolveOutcome, SolveError> {
    assert!(config.repeat_bound >= 1, "repeat bound must be positive");
    assert!(config.tot_sim_bound >= 1, "retry budget must be positive");
    let report = validate(c);
    if !report.valid {
        return Err(SolveError::InvalidComposition(report));
    }

    let clock = Instant::now();
    let n = c.n();
    if n < PIPELINE_MIN {
        return Ok(solve_exhaustively(c, config, clock));
    }

    let mut board = Board::from_composition(c).expect("validated composition replays cleanly");
    let k = board.placed();
    let levels = base_levels(n);
    let entry = entry_block(n, k, &levels);
    if board.is_full() {
        return Ok(finish(
            Verdict::Completed(board.composition()),
            0,
            0,
            entry,
            clock,
        ));
    }

    let entry_phase = match entry {
        1 => Phase::BulkFill,
        2 => Phase::Checkpoint,
        _ => Phase::Endgame,
    };
    let mut rng = SeededRng::new(config.seed);
    let base = LevelSnapshot::capture(&board);
    // Placeholder until the checkpoint milestone is first reached.
    let mut guided = LevelSnapshot::capture(&board);
    let mut phase = entry_phase;
    let mut bt_count: u32 = 0;
    let mut block5_repeats: u64 = 0;

    loop {
        // Shared restore policy for every non-bulk dead end: local retries
        // at the checkpoint milestone, periodic escalation to entry, small
        // boards always restart from entry.
        macro_rules! backtrack {
            () => {{
                bt_count += 1;
                if bt_count >= config.tot_sim_bound {
                    return Ok(finish(
                        Verdict::DeemedNegative,
                        bt_count,
                        block5_repeats,
                        entry,
                        clock,
                    ));
                }
                if n < LOCAL_RETRY_MIN || bt_count % ESCALATION_PERIOD == 0 {
                    board = base.restore();
                    phase = entry_phase;
                } else {
                    board = guided.restore();
                    phase = Phase::GuidedFill;
                }
            }};
        }

        match phase {
            Phase::BulkFill => {
                let branch = run_randset(&mut board, &mut rng, levels.level2);
                match branch.status {
                    BranchStatus::Complete => break,
                    BranchStatus::TargetReached => phase = Phase::Checkpoint,
                    BranchStatus::Deadlocked => {
                        bt_count += 1;
                        if bt_count >= config.tot_sim_bound {
                            return Ok(finish(
                                Verdict::DeemedNegative,
                                bt_count,
                                block5_repeats,
                                entry,
                                clock,
                            ));
                        }
                        board = base.restore();
                    }
                }
            }
            Phase::Checkpoint => {
                guided = LevelSnapshot::capture(&board);
                phase = Phase::GuidedFill;
            }
            Phase::GuidedFill => {
                if board.placed() >= levels.level3 {
                    phase = Phase::Endgame;
                    continue;
                }
                let branch = run_rand_rand(&mut board, &mut rng, levels.level3);
                match branch.status {
                    BranchStatus::Complete => break,
                    BranchStatus::TargetReached => phase = Phase::Endgame,
                    BranchStatus::Deadlocked => backtrack!(),
                }
            }
            Phase::Endgame => match block4_prepare(&board) {
                Block4Outcome::DeadBranch { .. } => backtrack!(),
                Block4Outcome::Ready(prep) => {
                    let (outcome, repeats) = block5_run(&mut board, &prep, config, &mut rng);
                    block5_repeats += repeats;
                    match outcome {
                        Block5Outcome::Complete => break,
                        Block5Outcome::Exhausted => backtrack!(),
                    }
                }
            },
        }
    }

    let solution = board.composition();
    debug_assert!(validate(&solution).valid);
    debug_assert!(c.queens().all(|(i, j)| solution.col_in_row(i) == j));
    Ok(finish(
        Verdict::Completed(solution),
        bt_count,
        block5_repeats,
        entry,
        clock,
    ))
}

/// Below 7x7 the pipeline's levels degenerate, so completions are taken
/// straight from exhaustive search: a seeded uniform pick when any exist.
fn solve_exhaustively(c: &Composition, config: &SolverConfig, clock: Instant) -> SolveOutcome {
    let completions = oracle::completions_of(c);
    let verdict = if completions.is_empty() {
        Verdict::DeemedNegative
    } else {
        let mut rng = SeededRng::new(config.seed);
        let pick = rng.index(completions.len());
        Verdict::Completed(completions.into_iter().nth(pick).expect("index in range"))
    };
    finish(verdict, 0, 0, 0, clock)
}

fn finish(
    verdict: Verdict,
    bt_count: u32,
    block5_repeats: u64,
    entry_block: u8,
    clock: Instant,
) -> SolveOutcome {
    SolveOutcome {
        verdict,
        stats: SolveStats {
            bt_count,
            block5_repeats,
            wall_time: clock.elapsed(),
            entry_block,
        },
    }
}
