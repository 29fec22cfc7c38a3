//! A small seeded experiment run through the library, reported as a table
//! and as CSV.
//!
//! `cargo run --release --example benchmark`

use std::path::Path;

use fpakm::bench::{emit_report, run_experiment, ExperimentConfig, Manifest, ReportFormat, ReportOptions};

fn main() -> fpakm::Result<()> {
    let manifest = Manifest::load(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/manifest.toml"))?;
    let mut cfg = ExperimentConfig {
        datasets: vec!["artset1".into(), "iris".into()],
        runs: 5,
        base_seed: 100,
        ..ExperimentConfig::default()
    };
    cfg.fpa.max_iter = 500;

    let exp = run_experiment(&cfg, &manifest)?;
    let stdout = std::io::stdout();
    emit_report(&exp.stats, ReportFormat::Table, ReportOptions::default(), stdout.lock())?;
    println!();
    let opts = ReportOptions {
        include_timing: false,
    };
    emit_report(&exp.stats, ReportFormat::Csv, opts, stdout.lock())?;

    let worst = exp
        .records
        .iter()
        .filter_map(|r| r.objective.map(|o| (o, r)))
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .unwrap();
    println!("\nworst run: {} {} run {} seed {}", worst.1.dataset, worst.1.algorithm, worst.1.run, worst.1.seed);
    Ok(())
}
