//! Library-level pipeline: load through the manifest, run, aggregate, report.

use std::path::Path;

use fpakm::bench::{
    aggregate, emit_report, read_stats_csv, run_cell, run_experiment, Algorithm, ExperimentConfig,
    Manifest, ReportFormat, ReportOptions,
};
use fpakm::evaluation::score_assignment;
use fpakm::fpakm::{fpakm_run, FpakmConfig};
use fpakm::kmeans::{kmeans_run, KMeansConfig, KMeansInit};
use fpakm::objective::assign;

fn manifest() -> Manifest {
    Manifest::load(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/manifest.toml")).unwrap()
}

fn quick(runs: usize) -> ExperimentConfig {
    let mut cfg = ExperimentConfig {
        runs,
        ..ExperimentConfig::default()
    };
    cfg.fpa.max_iter = 15;
    cfg
}

#[test]
fn bundled_datasets_have_declared_shapes() {
    let m = manifest();
    let shapes: Vec<(&str, (usize, usize, usize))> = vec![
        ("artset1", (250, 3, 5)),
        ("iris", (150, 4, 3)),
        ("wine", (178, 13, 3)),
        ("glass", (214, 9, 6)),
        ("cancer", (683, 9, 2)),
        ("cmc", (1473, 9, 3)),
    ];
    for (name, (n, d, k)) in shapes {
        let ds = m.load_dataset(name).unwrap();
        assert_eq!((ds.len(), ds.dim(), ds.num_classes()), (n, d, k), "{name}");
    }
}

#[test]
fn default_grid_follows_manifest_order() {
    let m = manifest();
    let exp = run_experiment(&quick(1), &m).unwrap();
    assert_eq!(exp.skipped, vec!["thyroid", "crude-oil"]);
    let rows: Vec<(String, Algorithm)> = exp
        .stats
        .iter()
        .map(|s| (s.dataset.clone(), s.algorithm))
        .collect();
    let mut expected = Vec::new();
    for d in ["artset1", "iris", "wine", "glass", "cancer", "cmc"] {
        for a in Algorithm::ALL {
            expected.push((d.to_string(), a));
        }
    }
    assert_eq!(rows, expected);
    for s in &exp.stats {
        let o = s.objective.unwrap();
        assert_eq!((o.min, o.max, o.std), (o.mean, o.mean, 0.0));
    }
}

#[test]
fn identical_configs_give_identical_stats() {
    let m = manifest();
    let mut cfg = quick(3);
    cfg.datasets = vec!["glass".into(), "iris".into()];
    let a = run_experiment(&cfg, &m).unwrap();
    let b = run_experiment(&cfg, &m).unwrap();
    let render = |e: &fpakm::bench::Experiment| {
        let mut buf = Vec::new();
        let opts = ReportOptions {
            include_timing: false,
        };
        emit_report(&e.stats, ReportFormat::Csv, opts, &mut buf).unwrap();
        buf
    };
    assert_eq!(render(&a), render(&b));
    assert_eq!(a.stats[0].dataset, "glass");

    let back = read_stats_csv(render(&a).as_slice()).unwrap();
    for (x, y) in back.iter().zip(&a.stats) {
        assert_eq!(x.objective, y.objective);
        assert_eq!(x.f_measure, y.f_measure);
    }
    let mut recomputed = aggregate(&a.records);
    for (r, s) in recomputed.iter_mut().zip(&a.stats) {
        assert_eq!(r.mean_wall_ms, s.mean_wall_ms);
        assert_eq!(r, s);
    }
}

#[test]
fn grid_cell_equals_direct_call() {
    let m = manifest();
    let iris = m.load_dataset("iris").unwrap();
    let cfg = quick(4);
    let rec = run_cell(&iris, Algorithm::Fpakm, &cfg, 3);
    assert_eq!(rec.seed, 3);

    let direct = fpakm_run(
        &iris,
        3,
        &FpakmConfig {
            fpa: fpakm::fpa::FpaConfig {
                max_iter: 15,
                rng_seed: 3,
                ..Default::default()
            },
            ..FpakmConfig::default()
        },
    )
    .unwrap();
    assert_eq!(rec.objective, Some(direct.best_objective()));
    let f = score_assignment(iris.classes().unwrap(), &assign(&iris, &direct.best).unwrap()).unwrap();
    assert_eq!(rec.f_measure, Some(f));

    let km = run_cell(&iris, Algorithm::KMeans, &cfg, 2);
    let direct = kmeans_run(
        &iris,
        3,
        KMeansInit::Random,
        &KMeansConfig {
            rng_seed: 2,
            ..KMeansConfig::default()
        },
    )
    .unwrap();
    assert_eq!(km.objective, Some(direct.objective()));
    assert_eq!(km.iterations, direct.iterations);
}
