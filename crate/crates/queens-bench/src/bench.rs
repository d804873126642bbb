//! Timed solve campaigns and their aggregate statistics.
//!
//! A campaign solves a file of same-size compositions, one independent trial
//! per composition, and produces two artifacts: a per-trial record stream
//! (CSV) and an aggregate report (JSON). Trials run in parallel; each one
//! derives its solver seed as master seed + trial index, so results do not
//! depend on scheduling. Aggregates are computed from the recorded
//! microsecond values, which keeps a report recomputed from the CSV
//! identical to the one built in memory.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, BufRead, Write};

use rayon::prelude::*;
use serde::Serialize;

use queens_core::solver::{solve, SolveError, SolverConfig};
use queens_core::{validate, Composition, ValidationReport};

/// Verdict of one timed trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialVerdict {
    Completed,
    Negative,
}

impl TrialVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            TrialVerdict::Completed => "completed",
            TrialVerdict::Negative => "negative",
        }
    }
}

/// One row of the per-trial CSV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial_index: usize,
    pub seed: u64,
    /// Queens present in the input composition.
    pub k: usize,
    pub verdict: TrialVerdict,
    pub bt_count: u32,
    pub block5_repeats: u64,
    pub wall_time_micros: u64,
}

/// Aggregate statistics over one campaign, mirroring the per-size rows of
/// the timing tables.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchReport {
    pub n: usize,
    pub sample_size: usize,
    /// Mean solve time, seconds.
    pub t_mean: f64,
    /// Mean after discarding the slowest tenth (ceil) of trials, seconds.
    pub t90_mean: f64,
    pub t_min: f64,
    pub t_max: f64,
    /// Negative verdicts; the input sample is positive by construction, so
    /// every one of these is a false negative.
    pub fn_count: u64,
    /// Microseconds per row: tMean * 10^6 / n.
    pub t_row: f64,
    /// Backtrack count -> number of trials.
    pub bt_histogram: BTreeMap<u32, u64>,
    /// Fraction of trials that finished without backtracking.
    pub no_bt_share: f64,
}

#[derive(Debug)]
pub enum BenchError {
    EmptySample,
    /// All compositions in a campaign must share one board size.
    MixedSizes { expected: usize, found: usize, index: usize },
    /// Trials never start if any input fails validation.
    InvalidInput { index: usize, report: ValidationReport },
}

impl fmt::Display for BenchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchError::EmptySample => write!(f, "the campaign has no compositions"),
            BenchError::MixedSizes {
                expected,
                found,
                index,
            } => write!(
                f,
                "composition {index} has board size {found}, campaign runs at {expected}"
            ),
            BenchError::InvalidInput { index, report } => {
                write!(f, "composition {index} failed validation: {report}")
            }
        }
    }
}

impl std::error::Error for BenchError {}

/// Solves every composition under per-trial seeds and aggregates. Inputs are
/// validated up front so timing only ever covers the solves themselves.
pub fn run_bench(
    compositions: &[Composition],
    config: &SolverConfig,
) -> Result<(BenchReport, Vec<TrialRecord>), BenchError> {
    let first = compositions.first().ok_or(BenchError::EmptySample)?;
    let n = first.n();
    for (index, c) in compositions.iter().enumerate() {
        if c.n() != n {
            return Err(BenchError::MixedSizes {
                expected: n,
                found: c.n(),
                index,
            });
        }
        let report = validate(c);
        if !report.valid {
            return Err(BenchError::InvalidInput { index, report });
        }
    }

    let records: Vec<TrialRecord> = compositions
        .par_iter()
        .enumerate()
        .map(|(trial_index, c)| {
            let seed = config.seed.wrapping_add(trial_index as u64);
            let trial_config = SolverConfig {
                seed,
                ..config.clone()
            };
            let outcome = match solve(c, &trial_config) {
                Ok(outcome) => outcome,
                // Pre-validated above; a rejection here is a logic error.
                Err(SolveError::InvalidComposition(report)) => {
                    unreachable!("validated input rejected: {report}")
                }
            };
            TrialRecord {
                trial_index,
                seed,
                k: c.queen_count(),
                verdict: if outcome.verdict.is_completed() {
                    TrialVerdict::Completed
                } else {
                    TrialVerdict::Negative
                },
                bt_count: outcome.stats.bt_count,
                block5_repeats: outcome.stats.block5_repeats,
                wall_time_micros: outcome.stats.wall_time.as_micros() as u64,
            }
        })
        .collect();

    Ok((aggregate(n, &records), records))
}

/// Folds trial records into a report. Public so a report can be rebuilt
/// from a persisted CSV and compared against the in-memory one.
pub fn aggregate(n: usize, records: &[TrialRecord]) -> BenchReport {
    assert!(!records.is_empty(), "cannot aggregate zero trials");
    let m = records.len();
    let seconds: Vec<f64> = records
        .iter()
        .map(|r| r.wall_time_micros as f64 / 1e6)
        .collect();
    let total: f64 = seconds.iter().sum();
    let t_mean = total / m as f64;
    let t_min = seconds.iter().cloned().fold(f64::INFINITY, f64::min);
    let t_max = seconds.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    // Drop the slowest ceil(m/10), but always keep at least one value.
    let mut sorted = seconds.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("times are finite"));
    let drop = (m.div_ceil(10)).min(m - 1);
    let kept = &sorted[..m - drop];
    let t90_mean = kept.iter().sum::<f64>() / kept.len() as f64;

    let mut bt_histogram = BTreeMap::new();
    let mut fn_count = 0u64;
    for r in records {
        *bt_histogram.entry(r.bt_count).or_insert(0u64) += 1;
        if r.verdict == TrialVerdict::Negative {
            fn_count += 1;
        }
    }
    let no_bt_share = bt_histogram.get(&0).copied().unwrap_or(0) as f64 / m as f64;

    BenchReport {
        n,
        sample_size: m,
        t_mean,
        t90_mean,
        t_min,
        t_max,
        fn_count,
        t_row: t_mean * 1e6 / n as f64,
        bt_histogram,
        no_bt_share,
    }
}

const TRIAL_HEADER: &str =
    "trialIndex,seed,k,verdict,btCount,block5Repeats,wallTimeMicros";

/// Writes the per-trial CSV, one row per record.
pub fn write_trials<W: Write>(mut w: W, records: &[TrialRecord]) -> io::Result<()> {
    writeln!(w, "{TRIAL_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            r.trial_index,
            r.seed,
            r.k,
            r.verdict.as_str(),
            r.bt_count,
            r.block5_repeats,
            r.wall_time_micros
        )?;
    }
    Ok(())
}

/// Reads a per-trial CSV produced by [`write_trials`].
pub fn read_trials<R: BufRead>(r: R) -> io::Result<Vec<TrialRecord>> {
    let bad = |line: usize, what: &str| {
        io::Error::new(
            io::ErrorKind::InvalidData,
            format!("trial CSV line {line}: {what}"),
        )
    };
    let mut lines = r.lines();
    let header = lines.next().transpose()?;
    if header.as_deref() != Some(TRIAL_HEADER) {
        return Err(bad(1, "missing or unknown header"));
    }
    let mut records = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 2;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(bad(lineno, "expected 7 fields"));
        }
        let verdict = match fields[3] {
            "completed" => TrialVerdict::Completed,
            "negative" => TrialVerdict::Negative,
            other => return Err(bad(lineno, &format!("unknown verdict '{other}'"))),
        };
        let parse = |s: &str, what: &str| {
            s.parse::<u64>()
                .map_err(|_| bad(lineno, &format!("bad {what} '{s}'")))
        };
        records.push(TrialRecord {
            trial_index: parse(fields[0], "trialIndex")? as usize,
            seed: parse(fields[1], "seed")?,
            k: parse(fields[2], "k")? as usize,
            verdict,
            bt_count: parse(fields[4], "btCount")? as u32,
            block5_repeats: parse(fields[5], "block5Repeats")?,
            wall_time_micros: parse(fields[6], "wallTimeMicros")?,
        });
    }
    Ok(records)
}
