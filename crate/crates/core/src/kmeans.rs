//! Lloyd-style K-Means: assign every object to its nearest centroid, move
//! each centroid to the mean of its members, repeat.
//!
//! The mean update is optimal for squared distances, while the objective
//! here sums plain distances, so a mean step can occasionally raise it.
//! With `stop_on_increase` set (the default) such a step is rejected and the
//! run ends at the previous centroids, which keeps the objective
//! non-increasing over the whole run.

use rand::seq::index;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::objective::{self, Assignment, CentroidSolution};
use crate::SeededRng;

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansConfig {
    pub max_iters: usize,
    /// Run stops once no centroid moves farther than this.
    pub tol: f64,
    pub rng_seed: u64,
    pub stop_on_increase: bool,
}

impl Default for KMeansConfig {
    fn default() -> Self {
        Self {
            max_iters: 100,
            tol: 1e-6,
            rng_seed: 0,
            stop_on_increase: true,
        }
    }
}

impl KMeansConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::Config("k-means max_iters must be at least 1".into()));
        }
        if self.tol.is_nan() || self.tol < 0.0 {
            return Err(Error::Config("k-means tol must be non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum KMeansInit {
    /// Forgy seeding from `rng_seed`.
    Random,
    From(CentroidSolution),
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansOutcome {
    pub solution: CentroidSolution,
    pub assignment: Assignment,
    pub iterations: usize,
    /// Objective of the initial centroids followed by one entry per accepted
    /// update.
    pub history: Vec<f64>,
}

impl KMeansOutcome {
    pub fn objective(&self) -> f64 {
        self.solution.cached()
    }
}

/// Picks `k` distinct data points uniformly without replacement.
pub fn forgy_init(data: &Dataset, k: usize, rng: &mut SeededRng) -> Result<CentroidSolution> {
    if k == 0 || k > data.len() {
        return Err(Error::TooManyClusters { k, n: data.len() });
    }
    let picks = index::sample(rng, data.len(), k);
    let mut coords = Vec::with_capacity(k * data.dim());
    for i in picks.iter() {
        coords.extend_from_slice(data.point(i));
    }
    CentroidSolution::from_flat(k, data.dim(), coords)
}

pub fn kmeans_run(
    data: &Dataset,
    k: usize,
    init: KMeansInit,
    cfg: &KMeansConfig,
) -> Result<KMeansOutcome> {
    cfg.validate()?;
    if k == 0 || k > data.len() {
        return Err(Error::TooManyClusters { k, n: data.len() });
    }
    let mut current = match init {
        KMeansInit::Random => {
            let mut rng = crate::rng_from_seed(cfg.rng_seed);
            forgy_init(data, k, &mut rng)?
        }
        KMeansInit::From(c) => {
            if c.k() != k || c.dim() != data.dim() {
                return Err(Error::DimensionMismatch {
                    expected: k * data.dim(),
                    found: c.k() * c.dim(),
                });
            }
            c
        }
    };

    let (mut assignment, mut obj) = objective::assign_and_evaluate(data, &current)?;
    current.set_objective(obj);
    let mut history = vec![obj];
    let mut iterations = 0;

    while iterations < cfg.max_iters {
        iterations += 1;
        let mut next = objective::recompute_centroids(data, &assignment, k)?;
        let (next_assignment, next_obj) = objective::assign_and_evaluate(data, &next)?;
        if cfg.stop_on_increase && next_obj > obj {
            break;
        }
        let shift = current
            .centroids()
            .zip(next.centroids())
            .map(|(a, b)| objective::distance(a, b))
            .fold(0.0, f64::max);
        next.set_objective(next_obj);
        current = next;
        assignment = next_assignment;
        obj = next_obj;
        history.push(obj);
        if shift <= cfg.tol {
            break;
        }
    }

    Ok(KMeansOutcome {
        solution: current,
        assignment,
        iterations,
        history,
    })
}

/// `iters` Lloyd iterations seeded at `seed`, no convergence test. Used as
/// the local-search move of the hybrid optimizer.
pub fn lloyd_steps(
    data: &Dataset,
    seed: &CentroidSolution,
    iters: usize,
    stop_on_increase: bool,
) -> Result<CentroidSolution> {
    let cfg = KMeansConfig {
        max_iters: iters.max(1),
        tol: 0.0,
        rng_seed: 0,
        stop_on_increase,
    };
    Ok(kmeans_run(data, seed.k(), KMeansInit::From(seed.clone()), &cfg)?.solution)
}
