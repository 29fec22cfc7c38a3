//! Per-run records and their aggregation.

use serde::{Deserialize, Serialize};

use super::config::Algorithm;

/// One (dataset, algorithm, run) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub dataset: String,
    pub algorithm: Algorithm,
    pub run: usize,
    pub seed: u64,
    /// Final best objective; `None` when the run failed.
    pub objective: Option<f64>,
    /// F-measure of the final solution; `None` when unlabeled or failed.
    pub f_measure: Option<f64>,
    pub iterations: usize,
    pub wall_ms: f64,
    pub error: Option<String>,
}

impl RunRecord {
    pub fn failed(&self) -> bool {
        self.error.is_some()
    }
}

/// Best/worst/mean/std of a sample. `best` is the minimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// Sample standard deviation (divisor n - 1); 0 for one sample.
    pub std: f64,
}

impl Summary {
    pub fn of(xs: &[f64]) -> Option<Self> {
        if xs.is_empty() {
            return None;
        }
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let std = if xs.len() > 1 {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Some(Self {
            min: xs.iter().copied().fold(f64::INFINITY, f64::min),
            max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            mean,
            std,
        })
    }
}

/// Aggregate for one (dataset, algorithm) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub dataset: String,
    pub algorithm: Algorithm,
    pub runs: usize,
    pub failures: usize,
    /// Objective over successful runs: `min` is Best, `max` is Worst.
    pub objective: Option<Summary>,
    pub f_measure: Option<Summary>,
    pub mean_wall_ms: f64,
}

impl RunStats {
    /// Aggregates records of a single (dataset, algorithm) pair, in run order.
    pub fn from_records(records: &[RunRecord]) -> Option<Self> {
        let first = records.first()?;
        let mut sorted: Vec<&RunRecord> = records.iter().collect();
        sorted.sort_by_key(|r| r.run);
        let objectives: Vec<f64> = sorted.iter().filter_map(|r| r.objective).collect();
        let fs: Vec<f64> = sorted.iter().filter_map(|r| r.f_measure).collect();
        Some(Self {
            dataset: first.dataset.clone(),
            algorithm: first.algorithm,
            runs: records.len(),
            failures: sorted.iter().filter(|r| r.failed()).count(),
            objective: Summary::of(&objectives),
            f_measure: Summary::of(&fs),
            mean_wall_ms: sorted.iter().map(|r| r.wall_ms).sum::<f64>() / records.len() as f64,
        })
    }
}

/// Groups records by (dataset, algorithm), keeping first-appearance order.
pub fn aggregate(records: &[RunRecord]) -> Vec<RunStats> {
    let mut keys: Vec<(&str, Algorithm)> = Vec::new();
    for r in records {
        let key = (r.dataset.as_str(), r.algorithm);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .filter_map(|(d, a)| {
            let group: Vec<RunRecord> = records
                .iter()
                .filter(|r| r.dataset == d && r.algorithm == a)
                .cloned()
                .collect();
            RunStats::from_records(&group)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(run: usize, obj: f64, f: f64) -> RunRecord {
        RunRecord {
            dataset: "d".into(),
            algorithm: Algorithm::Fpa,
            run,
            seed: run as u64,
            objective: Some(obj),
            f_measure: Some(f),
            iterations: 1,
            wall_ms: 2.0,
            error: None,
        }
    }

    #[test]
    fn single_run_has_zero_spread() {
        let s = RunStats::from_records(&[rec(0, 5.0, 0.5)]).unwrap();
        let o = s.objective.unwrap();
        assert_eq!((o.min, o.max, o.mean, o.std), (5.0, 5.0, 5.0, 0.0));
    }

    #[test]
    fn sample_std() {
        let s = Summary::of(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]).unwrap();
        assert_eq!(s.mean, 5.0);
        assert!((s.std - (32.0f64 / 7.0).sqrt()).abs() < 1e-15);
        assert!(s.min <= s.mean && s.mean <= s.max);
    }

    #[test]
    fn failures_are_counted_not_averaged() {
        let mut bad = rec(1, 0.0, 0.0);
        bad.objective = None;
        bad.f_measure = None;
        bad.error = Some("boom".into());
        let s = RunStats::from_records(&[rec(0, 3.0, 1.0), bad, rec(2, 5.0, 1.0)]).unwrap();
        assert_eq!(s.runs, 3);
        assert_eq!(s.failures, 1);
        assert_eq!(s.objective.unwrap().mean, 4.0);
    }

    #[test]
    fn aggregate_keeps_order() {
        let mut a = rec(0, 1.0, 1.0);
        a.dataset = "z".into();
        let b = rec(0, 2.0, 1.0);
        let stats = aggregate(&[a.clone(), b, a]);
        assert_eq!(stats.len(), 2);
        assert_eq!(stats[0].dataset, "z");
        assert_eq!(stats[0].runs, 2);
    }
}
