//! Experiment configuration, loadable from TOML.
//!
//! ```toml
//! manifest = "manifest.toml"   # relative to this file
//! datasets = ["iris", "wine"]  # empty: every available manifest entry
//! algorithms = ["kmeans", "fpa", "fpakm"]
//! runs = 10
//! base_seed = 0
//!
//! [fpa]
//! num_flowers = 20
//! switch_p = 0.8
//! max_iter = 2000
//!
//! [fpakm]
//! limit = 2
//! ```

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpa::FpaConfig;
use crate::fpakm::FpakmConfig;
use crate::kmeans::KMeansConfig;
use crate::levy::LevyParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    KMeans,
    Fpa,
    Fpakm,
}

impl Algorithm {
    /// Report order.
    pub const ALL: [Algorithm; 3] = [Algorithm::KMeans, Algorithm::Fpa, Algorithm::Fpakm];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::KMeans => "kmeans",
            Algorithm::Fpa => "fpa",
            Algorithm::Fpakm => "fpakm",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "kmeans" | "k-means" => Ok(Algorithm::KMeans),
            "fpa" => Ok(Algorithm::Fpa),
            "fpakm" => Ok(Algorithm::Fpakm),
            other => Err(Error::Config(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KMeansSection {
    pub max_iters: usize,
    pub tol: f64,
    pub stop_on_increase: bool,
}

impl Default for KMeansSection {
    fn default() -> Self {
        let d = KMeansConfig::default();
        Self {
            max_iters: d.max_iters,
            tol: d.tol,
            stop_on_increase: d.stop_on_increase,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FpaSection {
    pub num_flowers: usize,
    pub switch_p: f64,
    pub max_iter: usize,
    pub levy_lambda: f64,
    pub levy_scale: f64,
    pub clamp_to_bounds: bool,
}

impl Default for FpaSection {
    fn default() -> Self {
        let d = FpaConfig::default();
        Self {
            num_flowers: d.num_flowers,
            switch_p: d.switch_p,
            max_iter: d.max_iter,
            levy_lambda: d.levy.lambda,
            levy_scale: d.levy.scale,
            clamp_to_bounds: d.clamp_to_bounds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FpakmSection {
    pub limit: usize,
    pub local_search_iters: usize,
}

impl Default for FpakmSection {
    fn default() -> Self {
        let d = FpakmConfig::default();
        Self {
            limit: d.limit,
            local_search_iters: d.local_search_iters,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Manifest path; relative paths resolve against the config file.
    pub manifest: Option<PathBuf>,
    pub datasets: Vec<String>,
    pub algorithms: Vec<Algorithm>,
    pub runs: usize,
    pub base_seed: u64,
    /// Worker threads; 0 uses every core.
    pub threads: usize,
    pub kmeans: KMeansSection,
    pub fpa: FpaSection,
    pub fpakm: FpakmSection,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            manifest: None,
            datasets: Vec::new(),
            algorithms: Algorithm::ALL.to_vec(),
            runs: 10,
            base_seed: 0,
            threads: 0,
            kmeans: KMeansSection::default(),
            fpa: FpaSection::default(),
            fpakm: FpakmSection::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut cfg = Self::parse(&text)?;
        if let (Some(m), Some(dir)) = (&cfg.manifest, path.parent()) {
            if m.is_relative() {
                cfg.manifest = Some(dir.join(m));
            }
        }
        Ok(cfg)
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithms selected".into()));
        }
        self.kmeans_config(0).validate()?;
        self.fpakm_config(0).validate()
    }

    /// Algorithms deduplicated, in report order.
    pub fn algorithm_order(&self) -> Vec<Algorithm> {
        Algorithm::ALL
            .into_iter()
            .filter(|a| self.algorithms.contains(a))
            .collect()
    }

    pub fn seed_for(&self, run: usize) -> u64 {
        self.base_seed.wrapping_add(run as u64)
    }

    pub fn kmeans_config(&self, seed: u64) -> KMeansConfig {
        KMeansConfig {
            max_iters: self.kmeans.max_iters,
            tol: self.kmeans.tol,
            rng_seed: seed,
            stop_on_increase: self.kmeans.stop_on_increase,
        }
    }

    pub fn fpa_config(&self, seed: u64) -> FpaConfig {
        FpaConfig {
            num_flowers: self.fpa.num_flowers,
            switch_p: self.fpa.switch_p,
            max_iter: self.fpa.max_iter,
            levy: LevyParams {
                lambda: self.fpa.levy_lambda,
                scale: self.fpa.levy_scale,
            },
            rng_seed: seed,
            clamp_to_bounds: self.fpa.clamp_to_bounds,
        }
    }

    pub fn fpakm_config(&self, seed: u64) -> FpakmConfig {
        FpakmConfig {
            fpa: self.fpa_config(seed),
            limit: self.fpakm.limit,
            local_search_iters: self.fpakm.local_search_iters,
        }
    }
}
