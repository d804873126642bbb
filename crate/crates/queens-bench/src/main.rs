//! Command-line front end: validation, solving, sample generation, timed
//! campaigns, selection-model runs, and the exhaustive oracle.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use queens_bench::{
    bt_group_means, equal_width_histogram, gen_solutions, run_bench, sample_compositions,
    write_histogram_csv, write_trials,
};
use queens_core::io::{read_compositions, write_composition, write_compositions, ParseError};
use queens_core::models::{run_rand_rand, run_randset, sequential_baseline, BranchStatus};
use queens_core::oracle::{
    enumerate_solutions, enumerate_solutions_forced, label_sample, OracleError,
};
use queens_core::solver::{solve, SolveOutcome, SolverConfig};
use queens_core::{validate, Board, Composition, SeededRng};

#[derive(Parser)]
#[command(
    name = "queens",
    version,
    about = "n-queens completion: validate, solve, benchmark"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the compositions in a file.
    ///
    /// Exits 0 when all are valid, 1 when any is invalid, 2 on malformed
    /// input.
    Verify { file: PathBuf },
    /// Complete a single composition; prints the solution or NEGATIVE.
    Solve {
        file: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Global backtrack budget before deeming the input negative.
        #[arg(long, default_value_t = 1000)]
        tot_sim_bound: u32,
        /// Endgame attempts per seed placement.
        #[arg(long, default_value_t = 5)]
        repeat_bound: u32,
        /// Emit verdict and statistics as JSON instead of plain text.
        #[arg(long)]
        json: bool,
    },
    /// Generate full solutions by completing the empty board.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Derive positive compositions from a solution file by blanking rows.
    Sample {
        /// File of full solutions produced by `gen`.
        #[arg(long)]
        solutions: PathBuf,
        /// Compositions derived from each solution.
        #[arg(long)]
        per: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve a composition file as a timed campaign.
    Bench {
        #[arg(long)]
        compositions: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        tot_sim_bound: u32,
        #[arg(long, default_value_t = 5)]
        repeat_bound: u32,
        /// Aggregate report (JSON).
        #[arg(long)]
        out_report: PathBuf,
        /// Per-trial records (CSV).
        #[arg(long)]
        out_trials: PathBuf,
        /// Optional solve-time histogram (CSV).
        #[arg(long)]
        out_hist: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        hist_bins: usize,
    },
    /// Run a selection model repeatedly and record per-trial outcomes.
    Models {
        #[arg(long)]
        model: ModelKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exhaustive small-board searches.
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
}

#[derive(Subcommand)]
enum OracleOp {
    /// Count all full solutions for a board size.
    Count {
        #[arg(long)]
        n: usize,
        /// Lift the size guard; runtime grows steeply.
        #[arg(long)]
        force: bool,
    },
    /// Write all full solutions for a board size to a file.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        force: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Label each composition in a file with exact completability.
    Label {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    /// Whole-board passes pairing shuffled free rows with free columns.
    Randset,
    /// One uniformly random free row and position per step.
    Randrand,
    /// Deterministic first-free-position baseline.
    Sequential,
}

/// JSON shape of a solve verdict for `solve --json`.
#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SolveDto {
    verdict: &'static str,
    solution: Option<Vec<usize>>,
    bt_count: u32,
    block5_repeats: u64,
    wall_time_micros: u64,
    entry_block: u8,
}

impl SolveDto {
    fn from_outcome(outcome: &SolveOutcome) -> Self {
        SolveDto {
            verdict: if outcome.verdict.is_completed() {
                "completed"
            } else {
                "negative"
            },
            solution: outcome
                .verdict
                .solution()
                .map(|c| c.entries().to_vec()),
            bt_count: outcome.stats.bt_count,
            block5_repeats: outcome.stats.block5_repeats,
            wall_time_micros: outcome.stats.wall_time.as_micros() as u64,
            entry_block: outcome.stats.entry_block,
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            // Malformed input files get their own exit code, distinct from
            // operational failures.
            if err.chain().any(|c| c.is::<ParseError>()) {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn run() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Verify { file } => cmd_verify(&file),
        Command::Solve {
            file,
            seed,
            tot_sim_bound,
            repeat_bound,
            json,
        } => cmd_solve(&file, seed, tot_sim_bound, repeat_bound, json),
        Command::Gen { n, count, seed, out } => cmd_gen(n, count, seed, &out),
        Command::Sample {
            solutions,
            per,
            seed,
            out,
        } => cmd_sample(&solutions, per, seed, &out),
        Command::Bench {
            compositions,
            seed,
            tot_sim_bound,
            repeat_bound,
            out_report,
            out_trials,
            out_hist,
            hist_bins,
        } => cmd_bench(
            &compositions,
            SolverConfig {
                seed,
                tot_sim_bound,
                repeat_bound,
            },
            &out_report,
            &out_trials,
            out_hist.as_deref(),
            hist_bins,
        ),
        Command::Models {
            model,
            n,
            trials,
            seed,
            out,
        } => cmd_models(model, n, trials, seed, &out),
        Command::Oracle { op } => cmd_oracle(op),
    }
}

fn load_compositions(path: &Path) -> Result<Vec<Composition>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let compositions = read_compositions(&text)
        .with_context(|| format!("cannot parse {}", path.display()))?;
    Ok(compositions)
}

fn cmd_verify(file: &Path) -> Result<ExitCode> {
    let compositions = load_compositions(file)?;
    let mut invalid = 0usize;
    for (idx, c) in compositions.iter().enumerate() {
        let report = validate(c);
        println!("composition {}: {report}", idx + 1);
        if !report.valid {
            invalid += 1;
        }
    }
    println!(
        "{} of {} valid",
        compositions.len() - invalid,
        compositions.len()
    );
    Ok(if invalid == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_solve(
    file: &Path,
    seed: u64,
    tot_sim_bound: u32,
    repeat_bound: u32,
    json: bool,
) -> Result<ExitCode> {
    let compositions = load_compositions(file)?;
    if compositions.len() != 1 {
        bail!(
            "solve expects exactly one composition, {} holds {}",
            file.display(),
            compositions.len()
        );
    }
    let config = SolverConfig {
        seed,
        tot_sim_bound,
        repeat_bound,
    };
    let outcome = solve(&compositions[0], &config)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&SolveDto::from_outcome(&outcome))?
        );
    } else {
        match outcome.verdict.solution() {
            Some(solution) => print!("{}", write_composition(solution)),
            None => println!("NEGATIVE"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(n: usize, count: usize, seed: u64, out: &Path) -> Result<ExitCode> {
    if count == 0 {
        bail!("--count must be at least 1");
    }
    let solutions = gen_solutions(n, count, seed)?;
    write_output(out, &write_compositions(&solutions))?;
    eprintln!("wrote {count} solutions of size {n} to {}", out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_sample(solutions: &Path, per: usize, seed: u64, out: &Path) -> Result<ExitCode> {
    if per == 0 {
        bail!("--per must be at least 1");
    }
    let pool = load_compositions(solutions)?;
    for (idx, s) in pool.iter().enumerate() {
        if !s.is_full() || !validate(s).valid {
            bail!(
                "source {} in {} is not a full valid solution",
                idx + 1,
                solutions.display()
            );
        }
    }
    let sample = sample_compositions(&pool, per, seed);
    write_output(out, &write_compositions(&sample))?;
    eprintln!(
        "wrote {} compositions ({} per solution) to {}",
        sample.len(),
        per,
        out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(
    compositions_path: &Path,
    config: SolverConfig,
    out_report: &Path,
    out_trials: &Path,
    out_hist: Option<&Path>,
    hist_bins: usize,
) -> Result<ExitCode> {
    let compositions = load_compositions(compositions_path)?;
    let (report, records) = run_bench(&compositions, &config)?;

    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    write_output(out_report, &json)?;

    let mut csv = Vec::new();
    write_trials(&mut csv, &records)?;
    fs::write(out_trials, csv)
        .with_context(|| format!("cannot write {}", out_trials.display()))?;

    if let Some(hist_path) = out_hist {
        let times: Vec<f64> = records
            .iter()
            .map(|r| r.wall_time_micros as f64 / 1e6)
            .collect();
        let bins = equal_width_histogram(&times, hist_bins);
        let mut out = Vec::new();
        write_histogram_csv(&mut out, &bins)?;
        // Group means by backtrack count ride along as a comment block for
        // the clustered-time view.
        for (bt, mean) in bt_group_means(&records) {
            writeln!(out, "# btGroup {bt} meanSeconds {mean}")?;
        }
        fs::write(hist_path, out)
            .with_context(|| format!("cannot write {}", hist_path.display()))?;
    }

    println!(
        "n={} trials={} tMean={:.6}s t90Mean={:.6}s fnCount={} noBtShare={:.4}",
        report.n, report.sample_size, report.t_mean, report.t90_mean, report.fn_count,
        report.no_bt_share
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_models(model: ModelKind, n: usize, trials: usize, seed: u64, out: &Path) -> Result<ExitCode> {
    if n == 0 {
        bail!("--n must be at least 1");
    }
    let name = match model {
        ModelKind::Randset => "randset",
        ModelKind::Randrand => "randrand",
        ModelKind::Sequential => "sequential",
    };
    let mut csv = String::from("seed,model,n,finalLength,status,passCount\n");
    for t in 0..trials {
        let trial_seed = seed.wrapping_add(t as u64);
        let (final_length, status, passes) = match model {
            ModelKind::Randset => {
                let mut board = Board::new(n);
                let branch = run_randset(&mut board, &mut SeededRng::new(trial_seed), n);
                (branch.placed_count, branch.status, branch.pass_count)
            }
            ModelKind::Randrand => {
                let mut board = Board::new(n);
                let branch = run_rand_rand(&mut board, &mut SeededRng::new(trial_seed), n);
                (branch.placed_count, branch.status, branch.pass_count)
            }
            // Deterministic; the seed column still records what was asked.
            ModelKind::Sequential => {
                let trace = sequential_baseline(n);
                let status = if trace.completed {
                    BranchStatus::Complete
                } else {
                    BranchStatus::Deadlocked
                };
                (trace.placed, status, trace.placed)
            }
        };
        csv.push_str(&format!(
            "{trial_seed},{name},{n},{final_length},{status},{passes}\n"
        ));
    }
    write_output(out, &csv)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(op: OracleOp) -> Result<ExitCode> {
    match op {
        OracleOp::Count { n, force } => {
            let result = if force {
                enumerate_solutions_forced(n, false)
            } else {
                enumerate_solutions(n, false).map_err(anyhow::Error::from)?
            };
            println!("{}", result.count);
        }
        OracleOp::Enumerate { n, force, out } => {
            // Materialized listings stay below the documented 12x12 cap
            // unless forced.
            if n > 12 && !force {
                bail!(OracleError::BoardTooLarge { n, limit: 12 });
            }
            let result = enumerate_solutions_forced(n, true);
            let solutions = result.solutions.expect("materialization was requested");
            if solutions.is_empty() {
                bail!("no {n}-queens solutions exist, nothing to write");
            }
            write_output(&out, &write_compositions(&solutions))?;
            eprintln!("wrote {} solutions to {}", result.count, out.display());
        }
        OracleOp::Label { input, out } => {
            let compositions = load_compositions(&input)?;
            let labeled = label_sample(&compositions)?;
            let mut csv = String::from("index,k,label\n");
            for (idx, (c, positive)) in labeled.iter().enumerate() {
                csv.push_str(&format!(
                    "{},{},{}\n",
                    idx + 1,
                    c.queen_count(),
                    if *positive { "positive" } else { "negative" }
                ));
            }
            write_output(&out, &csv)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_output(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).with_context(|| format!("cannot write {}", path.display()))
}
