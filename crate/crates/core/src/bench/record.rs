//! Benchmark rows, CSV I/O, and the per-cell summary.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::Algorithm;
use crate::stats::{mean, sample_sd};

/// What the `exact` column of a [`BenchRecord`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reference {
    /// Solution of the hitting-time linear system.
    Exact,
    /// Mean of repeated meeting-time estimates (no exact solve).
    MeetingMean,
    None,
}

/// One estimator run on one query pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub u: usize,
    pub v: usize,
    pub sampler: String,
    pub algorithm: Algorithm,
    pub repeat: usize,
    pub walks: u64,
    pub estimate: Option<f64>,
    pub exact: Option<f64>,
    pub reference: Reference,
    pub rel_error: Option<f64>,
    pub abs_error: Option<f64>,
    pub steps: u64,
    /// Seconds; left empty unless timing was requested, so that a fixed
    /// seed reproduces the file byte for byte.
    pub wall_time: Option<f64>,
    pub seed: u64,
    pub failed: bool,
    pub retries: u32,
}

impl BenchRecord {
    /// Fills the error columns from `estimate` and `exact`.
    pub fn with_errors(mut self) -> Self {
        match (self.estimate, self.exact) {
            (Some(est), Some(ex)) => {
                let abs = (est - ex).abs();
                self.abs_error = Some(abs);
                self.rel_error = Some(if ex != 0.0 { abs / ex.abs() } else { abs });
            }
            _ => {
                self.abs_error = None;
                self.rel_error = None;
            }
        }
        self
    }
}

pub fn write_records<W: Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records<R: Read, T: for<'de> Deserialize<'de>>(input: R) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

/// Mean and standard deviation of the relative error in one
/// `(graph, sampler, algorithm)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub graph: String,
    pub sampler: String,
    pub algorithm: Algorithm,
    pub runs: usize,
    pub failures: usize,
    /// Runs with a relative error.
    pub scored: usize,
    pub mean_rel_error: Option<f64>,
    pub sd_rel_error: Option<f64>,
    pub mean_steps: f64,
}

pub fn summarize(records: &[BenchRecord]) -> Vec<SummaryRow> {
    let mut cells: BTreeMap<(String, String, Algorithm), Vec<&BenchRecord>> = BTreeMap::new();
    for r in records {
        cells
            .entry((r.graph.clone(), r.sampler.clone(), r.algorithm))
            .or_default()
            .push(r);
    }
    cells
        .into_iter()
        .map(|((graph, sampler, algorithm), rows)| {
            let errs: Vec<f64> = rows.iter().filter_map(|r| r.rel_error).collect();
            let steps: Vec<f64> = rows.iter().map(|r| r.steps as f64).collect();
            SummaryRow {
                graph,
                sampler,
                algorithm,
                runs: rows.len(),
                failures: rows.iter().filter(|r| r.failed).count(),
                scored: errs.len(),
                mean_rel_error: (!errs.is_empty()).then(|| mean(&errs)),
                sd_rel_error: (!errs.is_empty()).then(|| sample_sd(&errs)),
                mean_steps: mean(&steps),
            }
        })
        .collect()
}

/// Recomputes the summary from raw rows and compares it with `summary`.
pub fn validate_summary(records: &[BenchRecord], summary: &[SummaryRow]) -> Result<()> {
    let fresh = summarize(records);
    if fresh.len() != summary.len() {
        return Err(Error::Mismatch(format!(
            "summary has {} cells, raw rows give {}",
            summary.len(),
            fresh.len()
        )));
    }
    let close = |a: Option<f64>, b: Option<f64>| match (a, b) {
        (Some(x), Some(y)) => (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0),
        (None, None) => true,
        _ => false,
    };
    for (a, b) in fresh.iter().zip(summary) {
        let same_key = (&a.graph, &a.sampler, a.algorithm) == (&b.graph, &b.sampler, b.algorithm);
        let same_counts = (a.runs, a.failures, a.scored) == (b.runs, b.failures, b.scored);
        if !(same_key
            && same_counts
            && close(a.mean_rel_error, b.mean_rel_error)
            && close(a.sd_rel_error, b.sd_rel_error)
            && close(Some(a.mean_steps), Some(b.mean_steps)))
        {
            return Err(Error::Mismatch(format!(
                "summary cell {}/{}/{} does not match raw rows",
                b.graph, b.sampler, b.algorithm
            )));
        }
    }
    Ok(())
}
