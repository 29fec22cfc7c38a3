//! Generate the five-class synthetic Artset1 dataset and write it as CSV.
//!
//! `cargo run --example artset1 -- [seed] [out.csv]`

use fpakm::dataset::{generate_artset1, ARTSET1_RANGES};

fn main() -> std::io::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().map_or(253, |s| s.parse().expect("seed must be an integer"));
    let out = args.next();

    let ds = generate_artset1(seed);
    println!("seed {seed}: n={} m={} K={}", ds.len(), ds.dim(), ds.num_classes());
    for (class, (lo, hi)) in ARTSET1_RANGES.iter().enumerate() {
        let members: Vec<&[f64]> = ds
            .points()
            .zip(ds.classes().unwrap())
            .filter(|(_, &c)| c == class)
            .map(|(p, _)| p)
            .collect();
        let min = members.iter().flat_map(|p| p.iter()).copied().fold(f64::INFINITY, f64::min);
        let max = members.iter().flat_map(|p| p.iter()).copied().fold(f64::NEG_INFINITY, f64::max);
        println!(
            "class {}: {} points, range ({lo}, {hi}), observed [{min:.3}, {max:.3}]",
            ds.class_names()[class],
            members.len()
        );
    }
    if let Some(path) = out {
        std::fs::write(&path, ds.to_csv_string())?;
        println!("wrote {path}");
    }
    Ok(())
}
