//! Flower pollination with a K-Means local search.
//!
//! The optimizer runs pollination sweeps while a global stagnation counter
//! `trial` is below `limit`. After a pollination sweep the counter resets if
//! the global best strictly improved and increments otherwise. Once it
//! reaches `limit`, the next sweep is a local-search sweep: every flower is
//! used as the seed of `local_search_iters` Lloyd iterations. The K-Means
//! result replaces the flower when it scores strictly better; otherwise that
//! flower pollinates as it would in an ordinary sweep. The counter restarts
//! at zero after every local-search sweep.
//!
//! A Lloyd step minimizes squared distances, so on this objective it can
//! make a flower worse (typically once the flower is already near an
//! optimum); adopting only strict improvements keeps those steps from
//! undoing progress.
//!
//! Lloyd iterations draw nothing from the random stream, so with an
//! unreachable `limit` the run is bit-identical to [`crate::fpa::fpa_run`].

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::fpa::{init_population, FpaConfig, MoveCounts, Pollinator, Population, RunOutcome};
use crate::kmeans::lloyd_steps;
use crate::SeededRng;

/// Improvements of the best objective at or below this count as no change.
pub const STAGNATION_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FpakmConfig {
    pub fpa: FpaConfig,
    /// Stagnant sweeps tolerated before a local-search sweep.
    pub limit: usize,
    /// Lloyd iterations per local-search move.
    pub local_search_iters: usize,
}

impl Default for FpakmConfig {
    fn default() -> Self {
        Self {
            fpa: FpaConfig::default(),
            limit: 2,
            local_search_iters: 1,
        }
    }
}

impl FpakmConfig {
    /// Configuration whose local search can never trigger.
    pub fn without_local_search(fpa: FpaConfig) -> Self {
        Self {
            fpa,
            limit: usize::MAX,
            local_search_iters: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.limit == 0 {
            return Err(Error::Config("limit must be at least 1".into()));
        }
        if self.local_search_iters == 0 {
            return Err(Error::Config("local_search_iters must be at least 1".into()));
        }
        self.fpa.validate()
    }
}

fn local_search_sweep(
    data: &Dataset,
    cfg: &FpakmConfig,
    pollinator: &Pollinator<'_>,
    pop: &mut Population,
    rng: &mut SeededRng,
    moves: &mut MoveCounts,
) -> Result<()> {
    for i in 0..pop.len() {
        let refined = lloyd_steps(data, &pop.flowers[i], cfg.local_search_iters, true)?;
        if refined.cached() < pop.flowers[i].cached() {
            pop.flowers[i] = refined;
            moves.kmeans += 1;
        } else {
            pollinator.pollinate(pop, i, rng, moves)?;
        }
    }
    Ok(())
}

pub fn fpakm_run(data: &Dataset, k: usize, cfg: &FpakmConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let fpa = &cfg.fpa;
    let mut rng = crate::rng_from_seed(fpa.rng_seed);
    let mut pop = init_population(data, k, fpa, &mut rng)?;
    let pollinator = Pollinator::new(data, fpa);
    let mut moves = MoveCounts::default();
    let mut history = Vec::with_capacity(fpa.max_iter);
    let mut trial_history = Vec::with_capacity(fpa.max_iter);
    let mut trial = 0usize;

    for _ in 0..fpa.max_iter {
        let searching = trial >= cfg.limit;
        if searching {
            local_search_sweep(data, cfg, &pollinator, &mut pop, &mut rng, &mut moves)?;
        } else {
            pollinator.sweep(&mut pop, &mut rng, &mut moves)?;
        }
        let gain = pop.refresh_best();
        if searching || gain > STAGNATION_EPS {
            trial = 0;
        } else {
            trial += 1;
        }
        history.push(pop.best_objective);
        trial_history.push(trial);
    }

    Ok(RunOutcome {
        best: pop.best,
        history,
        moves,
        trial_history,
    })
}
