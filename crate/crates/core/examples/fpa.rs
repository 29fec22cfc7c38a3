//! The flower pollination algorithm on Iris.
//!
//! `cargo run --release --example fpa`

use std::path::Path;

use fpakm::bench::Manifest;
use fpakm::evaluation::score_assignment;
use fpakm::fpa::{fpa_run, FpaConfig};
use fpakm::objective::assign;

fn main() -> fpakm::Result<()> {
    let manifest = Manifest::load(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/manifest.toml"))?;
    let iris = manifest.load_dataset("iris")?;

    let cfg = FpaConfig {
        rng_seed: 1,
        ..FpaConfig::default()
    };
    let out = fpa_run(&iris, 3, &cfg)?;
    for it in [0, 9, 99, 499, 1999] {
        println!("after sweep {:>4}: best {:.4}", it + 1, out.history[it]);
    }
    let m = out.moves;
    println!(
        "moves: {} global, {} local, {} accepted",
        m.global, m.local, m.accepted
    );
    let f = score_assignment(iris.classes().unwrap(), &assign(&iris, &out.best)?)?;
    println!("best objective {:.4}, F-measure {f:.3}", out.best_objective());
    for (j, c) in out.best.centroids().enumerate() {
        println!("centroid {j}: {c:.3?}");
    }
    Ok(())
}
