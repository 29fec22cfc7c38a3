//! Seeded repeated experiments over the three optimizers.
//!
//! An experiment is a grid of (dataset, algorithm, run) cells. Run `r` uses
//! seed `base_seed + r`, so each cell depends only on the manifest, the
//! configuration and `r`, and can be reproduced alone. Cells execute in
//! parallel; results are ordered by dataset (configuration or manifest
//! order), then algorithm (K-Means, FPA, FPAKM), then run. A panic inside a
//! cell is recorded as a failed run and the rest of the grid continues.

pub mod cli;
pub mod config;
pub mod manifest;
pub mod report;
pub mod stats;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;

pub use config::{Algorithm, ExperimentConfig};
pub use manifest::{Manifest, ManifestEntry, ValidationReport, ValidationStatus};
pub use report::{emit_report, read_run_log, read_stats_csv, write_run_log, ReportFormat, ReportOptions};
pub use stats::{aggregate, RunRecord, RunStats, Summary};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::evaluation::score_assignment;
use crate::fpa::fpa_run;
use crate::fpakm::fpakm_run;
use crate::kmeans::{kmeans_run, KMeansInit};
use crate::objective::{assign, CentroidSolution};

/// Records and aggregates of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    /// Per-run log in report order.
    pub records: Vec<RunRecord>,
    pub stats: Vec<RunStats>,
    /// Optional manifest entries left out because their files are absent.
    pub skipped: Vec<String>,
}

impl Experiment {
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.failed()).count()
    }

    pub fn stats_for(&self, dataset: &str, algorithm: Algorithm) -> Option<&RunStats> {
        self.stats
            .iter()
            .find(|s| s.dataset == dataset && s.algorithm == algorithm)
    }
}

/// Final state of a successful run.
#[derive(Debug, Clone)]
pub struct CellResult {
    pub best: CentroidSolution,
    pub objective: f64,
    pub iterations: usize,
}

/// Runs one algorithm once on `data` with `K = data.num_classes()`.
pub fn run_algorithm(
    data: &Dataset,
    algorithm: Algorithm,
    cfg: &ExperimentConfig,
    seed: u64,
) -> Result<CellResult> {
    let k = data.num_classes();
    match algorithm {
        Algorithm::KMeans => {
            let out = kmeans_run(data, k, KMeansInit::Random, &cfg.kmeans_config(seed))?;
            Ok(CellResult {
                objective: out.objective(),
                iterations: out.iterations,
                best: out.solution,
            })
        }
        Algorithm::Fpa | Algorithm::Fpakm => {
            let out = if algorithm == Algorithm::Fpa {
                fpa_run(data, k, &cfg.fpa_config(seed))?
            } else {
                fpakm_run(data, k, &cfg.fpakm_config(seed))?
            };
            Ok(CellResult {
                objective: out.best_objective(),
                iterations: out.iterations(),
                best: out.best,
            })
        }
    }
}

/// Runs cell `(data, algorithm, run)` and records its outcome, capturing
/// errors and panics.
pub fn run_cell(data: &Dataset, algorithm: Algorithm, cfg: &ExperimentConfig, run: usize) -> RunRecord {
    let seed = cfg.seed_for(run);
    execute_cell(data.name(), algorithm, run, seed, || {
        let res = run_algorithm(data, algorithm, cfg, seed)?;
        let f = match data.classes() {
            Some(labels) => Some(score_assignment(labels, &assign(data, &res.best)?)?),
            None => None,
        };
        Ok((res.objective, f, res.iterations))
    })
}

fn execute_cell<F>(dataset: &str, algorithm: Algorithm, run: usize, seed: u64, body: F) -> RunRecord
where
    F: FnOnce() -> Result<(f64, Option<f64>, usize)>,
{
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut record = RunRecord {
        dataset: dataset.to_string(),
        algorithm,
        run,
        seed,
        objective: None,
        f_measure: None,
        iterations: 0,
        wall_ms,
        error: None,
    };
    match outcome {
        Ok(Ok((objective, f, iterations))) => {
            record.objective = Some(objective);
            record.f_measure = f;
            record.iterations = iterations;
        }
        Ok(Err(e)) => record.error = Some(e.to_string()),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            record.error = Some(format!("panic: {msg}"));
        }
    }
    record
}

/// Picks and loads the datasets an experiment covers.
///
/// Named datasets must exist in the manifest and validate. With no names,
/// every manifest entry is used except optional ones whose file is absent;
/// those are returned as skipped.
pub fn resolve_datasets(
    cfg: &ExperimentConfig,
    manifest: &Manifest,
) -> Result<(Vec<Dataset>, Vec<String>)> {
    let mut skipped = Vec::new();
    let names: Vec<String> = if cfg.datasets.is_empty() {
        manifest
            .entries
            .iter()
            .filter(|e| {
                let keep = !e.optional || manifest.is_available(e);
                if !keep {
                    skipped.push(e.name.clone());
                }
                keep
            })
            .map(|e| e.name.clone())
            .collect()
    } else {
        cfg.datasets.clone()
    };
    let datasets = names
        .iter()
        .map(|n| manifest.load_dataset(n))
        .collect::<Result<Vec<_>>>()?;
    Ok((datasets, skipped))
}

/// Runs the configured grid over datasets taken from `manifest`.
pub fn run_experiment(cfg: &ExperimentConfig, manifest: &Manifest) -> Result<Experiment> {
    cfg.validate()?;
    let (datasets, skipped) = resolve_datasets(cfg, manifest)?;
    let mut exp = run_on_datasets(cfg, &datasets)?;
    exp.skipped = skipped;
    Ok(exp)
}

/// Runs the configured grid over already-loaded datasets, ignoring
/// `cfg.datasets`.
pub fn run_on_datasets(cfg: &ExperimentConfig, datasets: &[Dataset]) -> Result<Experiment> {
    cfg.validate()?;
    if datasets.is_empty() {
        return Err(Error::Config("no datasets to run".into()));
    }
    for d in datasets {
        if d.num_classes() > d.len() {
            return Err(Error::Validation {
                name: d.name().into(),
                reason: format!("{} clusters for {} objects", d.num_classes(), d.len()),
            });
        }
    }
    let algorithms = cfg.algorithm_order();
    let cells: Vec<(usize, Algorithm, usize)> = (0..datasets.len())
        .flat_map(|d| {
            algorithms
                .iter()
                .flat_map(move |&a| (0..cfg.runs).map(move |r| (d, a, r)))
        })
        .collect();

    let compute = || -> Vec<RunRecord> {
        cells
            .par_iter()
            .map(|&(d, a, r)| run_cell(&datasets[d], a, cfg, r))
            .collect()
    };
    let records = if cfg.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(compute)
    } else {
        compute()
    };

    let stats = aggregate(&records);
    Ok(Experiment {
        records,
        stats,
        skipped: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::generate_artset1;

    fn quick() -> ExperimentConfig {
        let mut cfg = ExperimentConfig {
            runs: 3,
            base_seed: 40,
            ..ExperimentConfig::default()
        };
        cfg.fpa.max_iter = 30;
        cfg
    }

    #[test]
    fn grid_order_and_seeds() {
        let data = generate_artset1(1);
        let exp = run_on_datasets(&quick(), std::slice::from_ref(&data)).unwrap();
        assert_eq!(exp.records.len(), 9);
        let order: Vec<(Algorithm, usize, u64)> =
            exp.records.iter().map(|r| (r.algorithm, r.run, r.seed)).collect();
        assert_eq!(order[0], (Algorithm::KMeans, 0, 40));
        assert_eq!(order[4], (Algorithm::Fpa, 1, 41));
        assert_eq!(order[8], (Algorithm::Fpakm, 2, 42));
        assert_eq!(exp.stats.len(), 3);
        assert_eq!(exp.failures(), 0);
        for s in &exp.stats {
            let o = s.objective.unwrap();
            assert!(o.min <= o.mean && o.mean <= o.max && o.std >= 0.0);
            let f = s.f_measure.unwrap();
            assert!(f.min >= 0.0 && f.max <= 1.0);
        }
    }

    #[test]
    fn single_cell_reproduces_grid_entry() {
        let data = generate_artset1(2);
        let cfg = quick();
        let exp = run_on_datasets(&cfg, std::slice::from_ref(&data)).unwrap();
        let alone = run_cell(&data, Algorithm::Fpakm, &cfg, 1);
        let in_grid = exp
            .records
            .iter()
            .find(|r| r.algorithm == Algorithm::Fpakm && r.run == 1)
            .unwrap();
        assert_eq!(alone.objective, in_grid.objective);
        assert_eq!(alone.f_measure, in_grid.f_measure);
    }

    #[test]
    fn panics_are_captured() {
        let rec = execute_cell("d", Algorithm::Fpa, 0, 0, || panic!("injected"));
        assert_eq!(rec.error.as_deref(), Some("panic: injected"));
        assert!(rec.objective.is_none());
        let rec = execute_cell("d", Algorithm::Fpa, 0, 0, || Err(Error::Config("bad".into())));
        assert!(rec.failed());
    }

    #[test]
    fn explicit_thread_count() {
        let mut cfg = quick();
        cfg.threads = 2;
        cfg.algorithms = vec![Algorithm::KMeans];
        let data = generate_artset1(3);
        let a = run_on_datasets(&cfg, std::slice::from_ref(&data)).unwrap();
        cfg.threads = 0;
        let b = run_on_datasets(&cfg, std::slice::from_ref(&data)).unwrap();
        assert_eq!(a.stats[0].objective, b.stats[0].objective);
    }

    #[test]
    fn unknown_dataset_is_a_validation_error() {
        let m = Manifest::parse("[[dataset]]\nname=\"a\"\ngenerator=\"artset1\"\n", ".").unwrap();
        let mut cfg = quick();
        cfg.datasets = vec!["nope".into()];
        assert!(matches!(
            run_experiment(&cfg, &m),
            Err(Error::Validation { name, .. }) if name == "nope"
        ));
    }
}
