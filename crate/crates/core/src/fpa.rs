//! Flower pollination over centroid solutions.
//!
//! A flower is one candidate clustering, its K centroids flattened into a
//! `K * m` vector. Each sweep visits every flower once and, with switch
//! probability `p`, proposes either a global move (Lévy step relative to the
//! global best) or a local move (random fraction of the difference between
//! two peers). A proposal replaces the flower only if it scores strictly
//! better. The global best is refreshed after the sweep, so every flower in
//! a sweep moves relative to the same best.
//!
//! Random stream contract, per flower and in this order: one uniform switch
//! draw; then for a global move `2 * K * m` standard normals, or for a local
//! move two distinct peer indices followed by one uniform `ε`.

use rand::seq::index;
use rand::Rng;

use crate::dataset::{Bounds, Dataset};
use crate::error::{Error, Result};
use crate::kmeans::forgy_init;
use crate::levy::{LevyParams, LevySampler};
use crate::objective::{self, CentroidSolution};
use crate::SeededRng;

#[derive(Debug, Clone, PartialEq)]
pub struct FpaConfig {
    pub num_flowers: usize,
    pub switch_p: f64,
    pub max_iter: usize,
    pub levy: LevyParams,
    pub rng_seed: u64,
    /// Clamp every proposal to the dataset's per-dimension bounds.
    pub clamp_to_bounds: bool,
}

impl Default for FpaConfig {
    fn default() -> Self {
        Self {
            num_flowers: 20,
            switch_p: 0.8,
            max_iter: 2000,
            levy: LevyParams::default(),
            rng_seed: 0,
            clamp_to_bounds: true,
        }
    }
}

impl FpaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_flowers < 2 {
            return Err(Error::Config(
                "flower population needs at least 2 members".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.switch_p) {
            return Err(Error::Config(format!(
                "switch probability {} outside [0, 1]",
                self.switch_p
            )));
        }
        self.levy.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub flowers: Vec<CentroidSolution>,
    /// Copy of the best solution found so far.
    pub best: CentroidSolution,
    pub best_objective: f64,
}

impl Population {
    pub fn len(&self) -> usize {
        self.flowers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flowers.is_empty()
    }

    /// Index and objective of the fittest current flower (lowest index on
    /// ties).
    pub fn fittest(&self) -> (usize, f64) {
        self.flowers
            .iter()
            .enumerate()
            .map(|(i, f)| (i, f.cached()))
            .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc })
    }

    /// Adopts the fittest flower as the best if it is strictly better.
    /// Returns the improvement (zero when none).
    pub(crate) fn refresh_best(&mut self) -> f64 {
        let (i, obj) = self.fittest();
        if obj < self.best_objective {
            let gain = self.best_objective - obj;
            self.best = self.flowers[i].clone();
            self.best_objective = obj;
            gain
        } else {
            0.0
        }
    }
}

/// Forgy-seeded population: every flower draws its own K distinct rows.
pub fn init_population(
    data: &Dataset,
    k: usize,
    cfg: &FpaConfig,
    rng: &mut SeededRng,
) -> Result<Population> {
    cfg.validate()?;
    if k == 0 || k > data.len() {
        return Err(Error::TooManyClusters { k, n: data.len() });
    }
    let mut flowers = Vec::with_capacity(cfg.num_flowers);
    for _ in 0..cfg.num_flowers {
        let mut f = forgy_init(data, k, rng)?;
        f.evaluate_cached(data)?;
        flowers.push(f);
    }
    let mut pop = Population {
        best: flowers[0].clone(),
        best_objective: f64::INFINITY,
        flowers,
    };
    pop.refresh_best();
    Ok(pop)
}

/// `x + L ⊙ (x − g*)` with the given per-coordinate steps.
pub fn apply_global(
    flower: &CentroidSolution,
    best: &CentroidSolution,
    steps: &[f64],
    bounds: Option<&Bounds>,
) -> CentroidSolution {
    let x = flower.as_flat();
    let g = best.as_flat();
    assert_eq!(x.len(), g.len(), "flower and best shapes differ");
    assert_eq!(x.len(), steps.len(), "step vector length differs");
    let mut coords: Vec<f64> = x
        .iter()
        .zip(g)
        .zip(steps)
        .map(|((&xi, &gi), &l)| xi + l * (xi - gi))
        .collect();
    if let Some(b) = bounds {
        b.clamp_flat(&mut coords);
    }
    finish(flower, coords)
}

/// `x + ε (x_j − x_k)`.
pub fn apply_local(
    flower: &CentroidSolution,
    peer_j: &CentroidSolution,
    peer_k: &CentroidSolution,
    epsilon: f64,
    bounds: Option<&Bounds>,
) -> CentroidSolution {
    let x = flower.as_flat();
    let (a, b) = (peer_j.as_flat(), peer_k.as_flat());
    assert!(x.len() == a.len() && x.len() == b.len(), "peer shapes differ");
    let mut coords: Vec<f64> = x
        .iter()
        .zip(a.iter().zip(b))
        .map(|(&xi, (&aj, &bk))| xi + epsilon * (aj - bk))
        .collect();
    if let Some(b) = bounds {
        b.clamp_flat(&mut coords);
    }
    finish(flower, coords)
}

fn finish(template: &CentroidSolution, coords: Vec<f64>) -> CentroidSolution {
    let mut out = template.clone();
    out.flat_mut().copy_from_slice(&coords);
    // unclamped Lévy jumps can overflow; treat that as no move
    if out.as_flat().iter().any(|v| !v.is_finite()) {
        return template.clone();
    }
    out
}

/// Global pollination with fresh Lévy steps.
pub fn global_pollination(
    flower: &CentroidSolution,
    best: &CentroidSolution,
    levy: &LevySampler,
    rng: &mut SeededRng,
    bounds: Option<&Bounds>,
) -> CentroidSolution {
    let mut steps = vec![0.0; flower.as_flat().len()];
    levy.fill(rng, &mut steps);
    apply_global(flower, best, &steps, bounds)
}

/// Local pollination with one uniform `ε ∈ [0, 1)` drawn from `rng`.
pub fn local_pollination(
    flower: &CentroidSolution,
    peer_j: &CentroidSolution,
    peer_k: &CentroidSolution,
    rng: &mut SeededRng,
    bounds: Option<&Bounds>,
) -> CentroidSolution {
    let epsilon: f64 = rng.random();
    apply_local(flower, peer_j, peer_k, epsilon, bounds)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MoveCounts {
    pub global: u64,
    pub local: u64,
    /// Local-search replacements made by the hybrid optimizer.
    pub kmeans: u64,
    /// Proposals that replaced their flower.
    pub accepted: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub best: CentroidSolution,
    /// Best objective after each sweep.
    pub history: Vec<f64>,
    pub moves: MoveCounts,
    /// Stagnation counter after each sweep (hybrid optimizer only).
    pub trial_history: Vec<usize>,
}

impl RunOutcome {
    pub fn best_objective(&self) -> f64 {
        self.best.cached()
    }

    pub fn iterations(&self) -> usize {
        self.history.len()
    }
}

/// One pollination sweep's worth of shared state.
pub(crate) struct Pollinator<'a> {
    pub data: &'a Dataset,
    pub switch_p: f64,
    pub sampler: LevySampler,
    pub bounds: Option<&'a Bounds>,
}

impl<'a> Pollinator<'a> {
    pub fn new(data: &'a Dataset, cfg: &FpaConfig) -> Self {
        Self {
            data,
            switch_p: cfg.switch_p,
            sampler: LevySampler::new(cfg.levy),
            bounds: cfg.clamp_to_bounds.then(|| data.bounds()),
        }
    }

    /// Proposes a move for flower `i` and keeps it if strictly better.
    pub fn pollinate(
        &self,
        pop: &mut Population,
        i: usize,
        rng: &mut SeededRng,
        moves: &mut MoveCounts,
    ) -> Result<()> {
        let flowers = &pop.flowers;
        let candidate = if rng.random::<f64>() < self.switch_p {
            moves.global += 1;
            global_pollination(&flowers[i], &pop.best, &self.sampler, rng, self.bounds)
        } else {
            moves.local += 1;
            let peers = index::sample(rng, flowers.len(), 2);
            let (j, k) = (peers.index(0), peers.index(1));
            local_pollination(&flowers[i], &flowers[j], &flowers[k], rng, self.bounds)
        };
        let score = objective::evaluate(self.data, &candidate)?;
        if score < pop.flowers[i].cached() {
            let mut candidate = candidate;
            candidate.set_objective(score);
            pop.flowers[i] = candidate;
            moves.accepted += 1;
        }
        Ok(())
    }

    pub fn sweep(
        &self,
        pop: &mut Population,
        rng: &mut SeededRng,
        moves: &mut MoveCounts,
    ) -> Result<()> {
        for i in 0..pop.len() {
            self.pollinate(pop, i, rng, moves)?;
        }
        Ok(())
    }
}

pub fn fpa_run(data: &Dataset, k: usize, cfg: &FpaConfig) -> Result<RunOutcome> {
    let mut rng = crate::rng_from_seed(cfg.rng_seed);
    let mut pop = init_population(data, k, cfg, &mut rng)?;
    let pollinator = Pollinator::new(data, cfg);
    let mut moves = MoveCounts::default();
    let mut history = Vec::with_capacity(cfg.max_iter);

    for _ in 0..cfg.max_iter {
        pollinator.sweep(&mut pop, &mut rng, &mut moves)?;
        pop.refresh_best();
        history.push(pop.best_objective);
    }

    Ok(RunOutcome {
        best: pop.best,
        history,
        moves,
        trial_history: Vec::new(),
    })
}
