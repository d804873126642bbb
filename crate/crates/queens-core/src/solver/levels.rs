//! Queen-count milestones that stage the solver.
//!
//! The solver drives a composition through up to three filling regimes; the
//! switch points are the base levels computed here. Both are calibrated as
//! "rows still open at the switch" via cubic fits in log10(n), with one fit
//! pair below 30000 and another above, then converted to absolute queen
//! counts and clamped into [0, n].

/// Queen counts at which the solver switches filling regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaseLevels {
    /// Switch from unordered bulk filling to length-guided filling.
    pub level2: usize,
    /// Switch from length-guided filling to the exact endgame.
    pub level3: usize,
}

/// Boards at least this big use the second calibration pair.
const LARGE_BOARD: usize = 30000;

// Cubic coefficients in u = log10(n), highest power first.
const SMALL_LEVEL2: [f64; 4] = [12.749568, -46.535838, 120.011829, -89.600272];
const SMALL_LEVEL3: [f64; 4] = [9.717958, -46.144187, 101.296409, -50.669273];
const LARGE_LEVEL2: [f64; 4] = [-0.886344, 56.136743, 146.486415, 227.967782];
const LARGE_LEVEL3: [f64; 4] = [14.959815, -253.661725, 1584.713376, -3060.691342];

fn cubic(c: &[f64; 4], u: f64) -> f64 {
    ((c[0] * u + c[1]) * u + c[2]) * u + c[3]
}

/// Computes both switch points for a board of size `n`.
///
/// `f64::round` ties away from zero, which is the rounding the calibration
/// was fitted under; keep it if this is ever rewritten.
pub fn base_levels(n: usize) -> BaseLevels {
    assert!(n >= 1, "board size must be at least 1");
    let u = (n as f64).log10();
    let (c2, c3) = if n < LARGE_BOARD {
        (&SMALL_LEVEL2, &SMALL_LEVEL3)
    } else {
        (&LARGE_LEVEL2, &LARGE_LEVEL3)
    };
    BaseLevels {
        level2: to_level(n, cubic(c2, u).round()),
        level3: to_level(n, cubic(c3, u).round()),
    }
}

/// `open_rows` is the fitted number of rows still open at the switch; the
/// level itself is the complementary queen count, clamped into [0, n].
fn to_level(n: usize, open_rows: f64) -> usize {
    let level = n as f64 - open_rows;
    if level <= 0.0 {
        0
    } else if level >= n as f64 {
        n
    } else {
        level as usize
    }
}

/// Picks the block a solve starts in from the board size and the number of
/// queens already placed.
///
/// Boards of 7..=49 always start at the preparation block: in that range the
/// staged filling is slower than going straight to the exact endgame.
pub fn entry_block(n: usize, k: usize, levels: &BaseLevels) -> u8 {
    assert!(n >= 7, "boards below 7x7 bypass the block pipeline");
    assert!(k <= n, "composition size cannot exceed the board");
    if n <= 49 || k >= levels.level3 {
        4
    } else if k >= levels.level2 {
        2
    } else {
        1
    }
}
