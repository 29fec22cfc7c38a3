//! Report rendering: aligned table, CSV and JSON lines, plus the per-run log.
//!
//! CSV and JSON carry every number at full (round-trip) precision; the table
//! rounds to three decimals.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::config::Algorithm;
use super::stats::{RunRecord, RunStats, Summary};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Table,
    Csv,
    JsonLines,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "table" => Ok(ReportFormat::Table),
            "csv" => Ok(ReportFormat::Csv),
            "jsonl" | "json-lines" | "json" => Ok(ReportFormat::JsonLines),
            other => Err(Error::Config(format!("unknown report format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    /// Include wall-clock columns. Disable for byte-identical reruns.
    pub include_timing: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            include_timing: true,
        }
    }
}

/// Flat CSV row for one [`RunStats`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct StatsRow {
    dataset: String,
    algorithm: Algorithm,
    runs: usize,
    failures: usize,
    best: Option<f64>,
    worst: Option<f64>,
    average: Option<f64>,
    std: Option<f64>,
    f_min: Option<f64>,
    f_max: Option<f64>,
    f_avg: Option<f64>,
    f_std: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mean_wall_ms: Option<f64>,
}

impl StatsRow {
    fn new(s: &RunStats, opts: ReportOptions) -> Self {
        let o = s.objective;
        let f = s.f_measure;
        Self {
            dataset: s.dataset.clone(),
            algorithm: s.algorithm,
            runs: s.runs,
            failures: s.failures,
            best: o.map(|o| o.min),
            worst: o.map(|o| o.max),
            average: o.map(|o| o.mean),
            std: o.map(|o| o.std),
            f_min: f.map(|f| f.min),
            f_max: f.map(|f| f.max),
            f_avg: f.map(|f| f.mean),
            f_std: f.map(|f| f.std),
            mean_wall_ms: opts.include_timing.then_some(s.mean_wall_ms),
        }
    }

    fn into_stats(self) -> RunStats {
        let summary = |a, b, c, d| match (a, b, c, d) {
            (Some(min), Some(max), Some(mean), Some(std)) => Some(Summary { min, max, mean, std }),
            _ => None,
        };
        RunStats {
            dataset: self.dataset,
            algorithm: self.algorithm,
            runs: self.runs,
            failures: self.failures,
            objective: summary(self.best, self.worst, self.average, self.std),
            f_measure: summary(self.f_min, self.f_max, self.f_avg, self.f_std),
            mean_wall_ms: self.mean_wall_ms.unwrap_or(0.0),
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Report(e.to_string())
}

fn io_err(e: std::io::Error) -> Error {
    Error::Report(e.to_string())
}

pub fn emit_report<W: Write>(
    stats: &[RunStats],
    format: ReportFormat,
    opts: ReportOptions,
    out: W,
) -> Result<()> {
    if stats.is_empty() {
        return Err(Error::Report("no statistics to report".into()));
    }
    match format {
        ReportFormat::Table => {
            let mut out = out;
            out.write_all(render_table(stats, opts).as_bytes()).map_err(io_err)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for s in stats {
                w.serialize(StatsRow::new(s, opts)).map_err(csv_err)?;
            }
            w.flush().map_err(io_err)
        }
        ReportFormat::JsonLines => {
            let mut out = out;
            for s in stats {
                let mut v = serde_json::to_value(s).map_err(|e| Error::Report(e.to_string()))?;
                if !opts.include_timing {
                    v.as_object_mut().expect("struct").remove("mean_wall_ms");
                }
                writeln!(out, "{v}").map_err(io_err)?;
            }
            Ok(())
        }
    }
}

/// Human-readable table with three-decimal rounding.
pub fn render_table(stats: &[RunStats], opts: ReportOptions) -> String {
    let mut header = vec![
        "Dataset", "Algorithm", "Best", "Worst", "Average", "Std", "F_min", "F_max", "F_avg",
        "F_std",
    ];
    if opts.include_timing {
        header.push("ms/run");
    }
    let fmt3 = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |x| format!("{x:.3}"));
    let rows: Vec<Vec<String>> = stats
        .iter()
        .map(|s| {
            let o = s.objective;
            let f = s.f_measure;
            let mut row = vec![
                s.dataset.clone(),
                s.algorithm.to_string(),
                fmt3(o.map(|o| o.min)),
                fmt3(o.map(|o| o.max)),
                fmt3(o.map(|o| o.mean)),
                fmt3(o.map(|o| o.std)),
                fmt3(f.map(|f| f.min)),
                fmt3(f.map(|f| f.max)),
                fmt3(f.map(|f| f.mean)),
                fmt3(f.map(|f| f.std)),
            ];
            if opts.include_timing {
                row.push(format!("{:.1}", s.mean_wall_ms));
            }
            row
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
        .collect();

    let mut text = String::new();
    let runs = stats.iter().map(|s| s.runs).max().unwrap_or(0);
    let _ = writeln!(
        text,
        "# objective: sum of Euclidean distances to nearest centroid; {runs} runs per cell; std: sample (n-1)"
    );
    let line = |cells: Vec<String>| {
        cells
            .iter()
            .enumerate()
            .map(|(c, v)| {
                if c < 2 {
                    format!("{v:<w$}", w = widths[c])
                } else {
                    format!("{v:>w$}", w = widths[c])
                }
            })
            .collect::<Vec<_>>()
            .join("  ")
    };
    let _ = writeln!(text, "{}", line(header.iter().map(|h| h.to_string()).collect()));
    for row in rows {
        let _ = writeln!(text, "{}", line(row));
    }
    for s in stats.iter().filter(|s| s.failures > 0) {
        let _ = writeln!(
            text,
            "# {} / {}: {} of {} runs failed",
            s.dataset, s.algorithm, s.failures, s.runs
        );
    }
    text
}

/// Parses statistics previously written in CSV format.
pub fn read_stats_csv<R: Read>(input: R) -> Result<Vec<RunStats>> {
    csv::Reader::from_reader(input)
        .deserialize::<StatsRow>()
        .map(|r| r.map(StatsRow::into_stats).map_err(csv_err))
        .collect()
}

/// Writes the per-run log as CSV.
pub fn write_run_log<W: Write>(records: &[RunRecord], include_timing: bool, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        if include_timing {
            w.serialize(r).map_err(csv_err)?;
        } else {
            let mut r = r.clone();
            r.wall_ms = 0.0;
            w.serialize(r).map_err(csv_err)?;
        }
    }
    w.flush().map_err(io_err)
}

pub fn read_run_log<R: Read>(input: R) -> Result<Vec<RunRecord>> {
    csv::Reader::from_reader(input)
        .deserialize::<RunRecord>()
        .map(|r| r.map_err(csv_err))
        .collect()
}
