//! Generation of solution pools and positive composition samples.
//!
//! Experiment inputs come in two stages: full solutions built by solving the
//! empty board under distinct seeds, then partial compositions derived from
//! those solutions by blanking rows. Derived compositions are positive by
//! construction, which is what lets the bench harness count every negative
//! verdict on them as a false negative.

use std::fmt;

use queens_core::solver::{solve, SolverConfig, Verdict};
use queens_core::{Composition, SeededRng};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenError {
    /// 2x2 and 3x3 have no solutions at all.
    ImpossibleBoard { n: usize },
    /// The solver kept deeming the empty board negative; with a sound setup
    /// this indicates a configuration problem, so give up loudly.
    PersistentFailure { index: usize, attempts: u32 },
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::ImpossibleBoard { n } => {
                write!(f, "no {n}-queens solutions exist")
            }
            GenError::PersistentFailure { index, attempts } => {
                write!(
                    f,
                    "could not complete the empty board for solution {index} after {attempts} attempts"
                )
            }
        }
    }
}

impl std::error::Error for GenError {}

/// Attempts per requested solution before giving up on the empty board.
const GEN_ATTEMPTS: u32 = 32;

/// Builds `count` full solutions of size `n` by repeatedly completing the
/// empty board, advancing the solver seed per attempt. Duplicates are
/// allowed. Deterministic in `seed`.
pub fn gen_solutions(n: usize, count: usize, seed: u64) -> Result<Vec<Composition>, GenError> {
    if n == 2 || n == 3 {
        return Err(GenError::ImpossibleBoard { n });
    }
    let empty = Composition::empty(n);
    let mut solutions = Vec::with_capacity(count);
    let mut next_seed = seed;
    for index in 0..count {
        let mut found = None;
        for _ in 0..GEN_ATTEMPTS {
            let config = SolverConfig::with_seed(next_seed);
            next_seed = next_seed.wrapping_add(1);
            let outcome = solve(&empty, &config).expect("empty board is valid");
            if let Verdict::Completed(solution) = outcome.verdict {
                found = Some(solution);
                break;
            }
        }
        match found {
            Some(solution) => solutions.push(solution),
            None => {
                return Err(GenError::PersistentFailure {
                    index,
                    attempts: GEN_ATTEMPTS,
                })
            }
        }
    }
    Ok(solutions)
}

/// Derives `per_solution` positive compositions from each source solution.
///
/// Each derivation draws its composition size k uniformly from [1, n-1],
/// then keeps a uniformly chosen k-subset of rows and blanks the rest. Every
/// derivation runs under its own sub-seed, so the sample is reproducible and
/// order-independent.
pub fn sample_compositions(
    solutions: &[Composition],
    per_solution: usize,
    seed: u64,
) -> Vec<Composition> {
    let mut derived = Vec::with_capacity(solutions.len() * per_solution);
    for (s_idx, solution) in solutions.iter().enumerate() {
        assert!(
            solution.n() >= 2,
            "composition sizes k in [1, n-1] need n >= 2"
        );
        assert!(solution.is_full(), "sources must be full solutions");
        for d_idx in 0..per_solution {
            let sub_seed = seed
                .wrapping_add((s_idx * per_solution + d_idx) as u64);
            derived.push(derive_one(solution, sub_seed));
        }
    }
    derived
}

fn derive_one(solution: &Composition, seed: u64) -> Composition {
    let n = solution.n();
    let mut rng = SeededRng::new(seed);
    let k = rng.uniform(n - 1);
    let mut rows: Vec<usize> = (1..=n).collect();
    rng.shuffle(&mut rows);
    let mut derived = solution.clone();
    for &row in &rows[..n - k] {
        derived.clear(row);
    }
    derived
}

#[cfg(test)]
mod tests {
    use super::*;
    use queens_core::{validate, Board};

    #[test]
    fn generated_solutions_are_full_valid_and_reproducible() {
        let pool = gen_solutions(8, 25, 7).unwrap();
        assert_eq!(pool.len(), 25);
        for s in &pool {
            assert!(s.is_full());
            assert!(validate(s).valid);
        }
        assert_eq!(pool, gen_solutions(8, 25, 7).unwrap());
        // A different seed explores different solutions.
        let other = gen_solutions(8, 25, 8).unwrap();
        assert_ne!(pool, other);
    }

    #[test]
    fn the_trivial_board_generates_its_only_solution() {
        let pool = gen_solutions(1, 3, 0).unwrap();
        assert_eq!(pool.len(), 3);
        for s in &pool {
            assert_eq!(s.entries(), &[1]);
        }
    }

    #[test]
    fn unsolvable_sizes_are_rejected() {
        assert_eq!(gen_solutions(2, 1, 0), Err(GenError::ImpossibleBoard { n: 2 }));
        assert_eq!(gen_solutions(3, 1, 0), Err(GenError::ImpossibleBoard { n: 3 }));
    }

    #[test]
    fn derived_compositions_are_consistent_sub_boards() {
        let pool = gen_solutions(10, 5, 3).unwrap();
        let sample = sample_compositions(&pool, 20, 11);
        assert_eq!(sample.len(), 100);
        for (idx, c) in sample.iter().enumerate() {
            let source = &pool[idx / 20];
            assert!(Board::from_composition(c).is_ok());
            let k = c.queen_count();
            assert!((1..=9).contains(&k), "k={k}");
            for (i, j) in c.queens() {
                assert_eq!(source.col_in_row(i), j);
            }
        }
        assert_eq!(sample, sample_compositions(&pool, 20, 11));
    }

    #[test]
    fn composition_sizes_cover_the_legal_range_roughly_uniformly() {
        let pool = gen_solutions(12, 1, 5).unwrap();
        let sample = sample_compositions(&pool, 11000, 13);
        let mut counts = vec![0u32; 12];
        for c in &sample {
            counts[c.queen_count()] += 1;
        }
        assert_eq!(counts[0], 0);
        // 11 legal sizes, 1000 expected each; chi-square df=10 at p=0.001
        // is 29.6, leave headroom.
        let expected = 1000.0;
        let chi2: f64 = (1..=11)
            .map(|k| {
                let diff = counts[k] as f64 - expected;
                diff * diff / expected
            })
            .sum();
        assert!(chi2 < 40.0, "chi2={chi2} counts={counts:?}");
    }

    #[test]
    fn blanked_rows_differ_across_sub_seeds() {
        let pool = gen_solutions(9, 1, 2).unwrap();
        let sample = sample_compositions(&pool, 50, 17);
        let distinct: std::collections::HashSet<_> =
            sample.iter().map(|c| c.entries().to_vec()).collect();
        assert!(distinct.len() > 30, "only {} distinct patterns", distinct.len());
    }
}
