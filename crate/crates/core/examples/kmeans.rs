//! K-Means on Iris from several Forgy starts.
//!
//! `cargo run --release --example kmeans`

use std::path::Path;

use fpakm::bench::Manifest;
use fpakm::evaluation::score_assignment;
use fpakm::kmeans::{kmeans_run, KMeansConfig, KMeansInit};

fn main() -> fpakm::Result<()> {
    let manifest = Manifest::load(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/manifest.toml"))?;
    let iris = manifest.load_dataset("iris")?;
    let labels = iris.classes().unwrap();

    for seed in 0..5 {
        let cfg = KMeansConfig {
            rng_seed: seed,
            ..KMeansConfig::default()
        };
        let out = kmeans_run(&iris, 3, KMeansInit::Random, &cfg)?;
        let f = score_assignment(labels, &out.assignment)?;
        println!(
            "seed {seed}: objective {:.3} after {} iterations, sizes {:?}, F {:.3}",
            out.objective(),
            out.iterations,
            out.assignment.cluster_sizes(),
            f
        );
        let trace: Vec<String> = out.history.iter().map(|h| format!("{h:.2}")).collect();
        println!("  history {}", trace.join(" -> "));
    }
    Ok(())
}
