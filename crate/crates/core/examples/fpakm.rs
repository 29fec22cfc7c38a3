//! The hybrid optimizer against plain flower pollination on Glass.
//!
//! `cargo run --release --example fpakm`

use std::path::Path;

use fpakm::bench::Manifest;
use fpakm::fpa::{fpa_run, FpaConfig};
use fpakm::fpakm::{fpakm_run, FpakmConfig};

fn main() -> fpakm::Result<()> {
    let manifest = Manifest::load(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/manifest.toml"))?;
    let glass = manifest.load_dataset("glass")?;
    let k = glass.num_classes();

    for seed in 0..3 {
        let fpa = FpaConfig {
            rng_seed: seed,
            ..FpaConfig::default()
        };
        let plain = fpa_run(&glass, k, &fpa)?;
        let hybrid = fpakm_run(&glass, k, &FpakmConfig {
            fpa,
            ..FpakmConfig::default()
        })?;
        let searches = hybrid.trial_history.windows(2).filter(|w| w[0] >= 2).count();
        println!(
            "seed {seed}: FPA {:.3}  FPAKM {:.3}  ({} local-search sweeps, {} K-Means replacements)",
            plain.best_objective(),
            hybrid.best_objective(),
            searches,
            hybrid.moves.kmeans
        );
    }

    // with local search disabled the hybrid reproduces FPA exactly
    let fpa = FpaConfig {
        max_iter: 200,
        ..FpaConfig::default()
    };
    let a = fpa_run(&glass, k, &fpa)?;
    let b = fpakm_run(&glass, k, &FpakmConfig::without_local_search(fpa))?;
    println!("limit = infinity reproduces FPA: {}", a.best == b.best && a.history == b.history);
    Ok(())
}
