//! Persistence: per-run record CSVs, summary sidecars, and plot-ready CSVs.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::stats::SummaryStats;

/// One row of the per-run record CSV.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialRecord {
    pub run_index: usize,
    pub seed: u64,
    pub evaluations: u64,
    pub success: bool,
    pub final_fitness: f64,
    pub wall_time_s: f64,
}

/// Streaming CSV writer for run records. Rows are appended in run-index
/// order as batches complete, so an interrupted experiment leaves a
/// parseable prefix and a finished one is bit-identical across reruns
/// (modulo the wall-time column).
pub struct RecordWriter {
    writer: csv::Writer<Box<dyn Write + Send>>,
}

impl RecordWriter {
    pub fn to_path(path: &Path) -> Result<Self> {
        let file = std::fs::File::create(path)
            .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
        Self::new(Box::new(file))
    }

    pub fn new(sink: Box<dyn Write + Send>) -> Result<Self> {
        let mut writer = csv::WriterBuilder::new().from_writer(sink);
        writer.write_record([
            "run_index",
            "seed",
            "evaluations",
            "success",
            "final_fitness",
            "wall_time_s",
        ])?;
        writer.flush()?;
        Ok(Self { writer })
    }

    pub fn append(&mut self, record: &TrialRecord) -> Result<()> {
        self.writer.write_record([
            record.run_index.to_string(),
            record.seed.to_string(),
            record.evaluations.to_string(),
            record.success.to_string(),
            format_fitness(record.final_fitness),
            format!("{:.6}", record.wall_time_s),
        ])?;
        self.writer.flush()?;
        Ok(())
    }
}

fn format_fitness(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{v:.1}")
    } else {
        format!("{v}")
    }
}

pub fn read_records(path: &Path) -> Result<Vec<TrialRecord>> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for row in reader.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}

/// One row of a summary CSV (a sweep or comparison table).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummaryRow {
    pub algorithm: String,
    pub benchmark: String,
    /// Which parameter this row varies ("n", "k", ..., or "algorithm").
    pub param: String,
    /// The parameter's value for this row.
    pub value: f64,
    pub runs: usize,
    pub budget: u64,
    pub success_rate: f64,
    pub mean: Option<f64>,
    pub median: Option<f64>,
    pub sd: Option<f64>,
    pub min: Option<u64>,
    pub max: Option<u64>,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
}

impl SummaryRow {
    pub fn new(
        algorithm: &str,
        benchmark: &str,
        param: &str,
        value: f64,
        budget: u64,
        stats: &SummaryStats,
    ) -> Self {
        Self {
            algorithm: algorithm.to_string(),
            benchmark: benchmark.to_string(),
            param: param.to_string(),
            value,
            runs: stats.runs,
            budget,
            success_rate: stats.success_rate,
            mean: stats.mean,
            median: stats.median,
            sd: stats.sd,
            min: stats.min,
            max: stats.max,
            ci_low: stats.ci_low,
            ci_high: stats.ci_high,
        }
    }
}

pub fn write_summary_rows(path: &Path, rows: &[SummaryRow]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)
        .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_summary_rows(path: &Path) -> Result<Vec<SummaryRow>> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for row in reader.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}

/// One row of the plot-ready CSV.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlotRow {
    pub x: f64,
    pub mean: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub algorithm: String,
    pub benchmark: String,
}

/// Projects a summary CSV onto the plot columns, dropping rows without a
/// mean (no successful runs).
pub fn emit_plot_data(records: &Path, out: &Path) -> Result<usize> {
    let rows = read_summary_rows(records)?;
    let plot_rows: Vec<PlotRow> = rows
        .iter()
        .filter_map(|r| {
            Some(PlotRow {
                x: r.value,
                mean: r.mean?,
                ci_low: r.ci_low?,
                ci_high: r.ci_high?,
                algorithm: r.algorithm.clone(),
                benchmark: r.benchmark.clone(),
            })
        })
        .collect();
    if plot_rows.is_empty() {
        return Err(HarnessError::Config(format!(
            "{}: no plottable rows (no successful runs?)",
            records.display()
        )));
    }
    let mut writer = csv::Writer::from_path(out)
        .map_err(|e| HarnessError::Io(format!("{}: {e}", out.display())))?;
    for row in &plot_rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(plot_rows.len())
}

/// Sidecar path for the run-record summary: `runs.csv` -> `runs.summary.json`.
pub fn summary_sidecar_path(records: &Path) -> PathBuf {
    records.with_extension("summary.json")
}
