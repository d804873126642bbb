//! Distribution summaries for campaign results.

use std::fmt;
use std::io::{self, Write};

use crate::bench::TrialRecord;

/// One equal-width histogram bin over `[start, end)`; the final bin is
/// closed on the right so the maximum lands inside it.
#[derive(Debug, Clone, PartialEq)]
pub struct HistogramBin {
    pub start: f64,
    pub end: f64,
    pub count: u64,
}

/// Bins `values` into `bin_count` equal-width intervals spanning
/// [min, max]. Empty input yields no bins; constant input collapses the
/// span, putting everything in the first bin.
pub fn equal_width_histogram(values: &[f64], bin_count: usize) -> Vec<HistogramBin> {
    assert!(bin_count >= 1, "need at least one bin");
    if values.is_empty() {
        return Vec::new();
    }
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let width = (max - min) / bin_count as f64;
    let mut bins: Vec<HistogramBin> = (0..bin_count)
        .map(|b| HistogramBin {
            start: min + b as f64 * width,
            end: min + (b + 1) as f64 * width,
            count: 0,
        })
        .collect();
    for &v in values {
        let idx = if width > 0.0 {
            (((v - min) / width) as usize).min(bin_count - 1)
        } else {
            0
        };
        bins[idx].count += 1;
    }
    bins
}

/// Writes histogram bins as CSV. Empty input produces only the header.
pub fn write_histogram_csv<W: Write>(mut w: W, bins: &[HistogramBin]) -> io::Result<()> {
    writeln!(w, "binStart,binEnd,frequency")?;
    for bin in bins {
        writeln!(w, "{},{},{}", bin.start, bin.end, bin.count)?;
    }
    Ok(())
}

/// Mean solve time per backtrack count, ascending by count. Groups trials
/// the way the clustered timing plots do.
pub fn bt_group_means(records: &[TrialRecord]) -> Vec<(u32, f64)> {
    let mut sums: std::collections::BTreeMap<u32, (f64, u64)> = std::collections::BTreeMap::new();
    for r in records {
        let entry = sums.entry(r.bt_count).or_insert((0.0, 0));
        entry.0 += r.wall_time_micros as f64 / 1e6;
        entry.1 += 1;
    }
    sums.into_iter()
        .map(|(bt, (total, count))| (bt, total / count as f64))
        .collect()
}

/// Log-log scaling fit of mean solve time against board size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFit {
    /// Slope of log10(1000 * tMean) in log10(n); 1.0 would be linear time.
    pub slope: f64,
    pub intercept: f64,
    /// Pearson correlation of the transformed points.
    pub correlation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitError {
    /// A line needs two distinct abscissas.
    TooFewPoints { found: usize },
    DegenerateSizes,
    /// Board sizes and times must be positive to take logarithms.
    NonPositiveValue,
}

impl fmt::Display for FitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitError::TooFewPoints { found } => {
                write!(f, "scaling fit needs at least 2 points, found {found}")
            }
            FitError::DegenerateSizes => write!(f, "scaling fit needs distinct board sizes"),
            FitError::NonPositiveValue => {
                write!(f, "scaling fit needs positive sizes and times")
            }
        }
    }
}

impl std::error::Error for FitError {}

/// Least-squares fit of log10(1000 * tMean) against log10(n) over
/// `(n, tMean-in-seconds)` points.
pub fn scaling_fit(points: &[(f64, f64)]) -> Result<ScalingFit, FitError> {
    if points.len() < 2 {
        return Err(FitError::TooFewPoints {
            found: points.len(),
        });
    }
    if points.iter().any(|&(n, t)| n <= 0.0 || t <= 0.0) {
        return Err(FitError::NonPositiveValue);
    }
    let m = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|&(n, _)| n.log10()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, t)| (1000.0 * t).log10()).collect();
    let x_mean = xs.iter().sum::<f64>() / m;
    let y_mean = ys.iter().sum::<f64>() / m;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - x_mean) * (x - x_mean);
        syy += (y - y_mean) * (y - y_mean);
        sxy += (x - x_mean) * (y - y_mean);
    }
    if sxx == 0.0 {
        return Err(FitError::DegenerateSizes);
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    // A flat response is a perfect fit by the horizontal line.
    let correlation = if syy == 0.0 { 1.0 } else { sxy / (sxx * syy).sqrt() };
    Ok(ScalingFit {
        slope,
        intercept,
        correlation,
    })
}
