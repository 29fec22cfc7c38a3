//! End-to-end checks of the `cluster-bench` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fpakm::bench::{aggregate, read_run_log, read_stats_csv};
use fpakm::dataset::{generate_artset1, load_delimited, Schema};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cluster-bench"))
}

fn manifest() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/manifest.toml")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn quick_run(dir: &Path, tag: &str, extra: &[&str]) -> Output {
    let out = dir.join(format!("{tag}.csv"));
    bin()
        .args(["run", "--manifest"])
        .arg(manifest())
        .args(["--datasets", "iris,artset1", "--runs", "3", "--max-iter", "25", "--seed", "7"])
        .args(["--format", "csv", "--no-timing", "--out"])
        .arg(&out)
        .args(extra)
        .output()
        .unwrap()
}

#[test]
fn gen_artset1_writes_loadable_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("art.csv");
    let out = bin()
        .args(["gen-artset1", "--seed", "1", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text, generate_artset1(1).to_csv_string());
    let ds = load_delimited(&path, &Schema::csv_with_label(3)).unwrap();
    assert_eq!((ds.len(), ds.dim(), ds.num_classes()), (250, 3, 5));
}

#[test]
fn validate_bundled_manifest() {
    let out = bin().arg("validate").arg("--manifest").arg(manifest()).output().unwrap();
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ok       iris (n=150, m=4, K=3)"));
    assert!(text.contains("missing  crude-oil"));
}

#[test]
fn validate_reports_shape_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("x.csv"), "1,2,a\n3,4,b\n").unwrap();
    let m = dir.path().join("m.toml");
    fs::write(&m, "[[dataset]]\nname=\"x\"\npath=\"x.csv\"\nlabel_column=2\ninstances=5\n").unwrap();
    let out = bin().arg("validate").arg("--manifest").arg(&m).output().unwrap();
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8(out.stdout).unwrap().contains("instances: expected 5, found 2"));
}

#[test]
fn reruns_are_byte_identical_and_log_reproduces_stats() {
    let dir = tempfile::tempdir().unwrap();
    let a = quick_run(dir.path(), "a", &[]);
    let b = quick_run(dir.path(), "b", &["--threads", "1"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(code(&b), 0);
    let report_a = fs::read(dir.path().join("a.csv")).unwrap();
    assert_eq!(report_a, fs::read(dir.path().join("b.csv")).unwrap());
    let log_a = fs::read(dir.path().join("a.runs.csv")).unwrap();
    assert_eq!(log_a, fs::read(dir.path().join("b.runs.csv")).unwrap());

    let stats = read_stats_csv(report_a.as_slice()).unwrap();
    let records = read_run_log(log_a.as_slice()).unwrap();
    assert_eq!(records.len(), 18);
    assert_eq!(aggregate(&records), stats);
    let order: Vec<String> = stats
        .iter()
        .map(|s| format!("{}/{}", s.dataset, s.algorithm))
        .collect();
    assert_eq!(
        order,
        ["iris/kmeans", "iris/fpa", "iris/fpakm", "artset1/kmeans", "artset1/fpa", "artset1/fpakm"]
    );
    assert!(records.iter().all(|r| r.seed == 7 + r.run as u64));
}

#[test]
fn table_and_jsonl_formats() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["run", "--manifest"])
        .arg(manifest())
        .args(["--datasets", "iris", "--algorithms", "fpakm", "--runs", "1", "--max-iter", "10"])
        .args(["--log"])
        .arg(dir.path().join("log.csv"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let table = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("Dataset"));
    assert!(lines[2].starts_with("iris"));
    assert_eq!(lines[2].matches("0.000").count(), 2, "{}", lines[2]);

    let out = bin()
        .args(["run", "--manifest"])
        .arg(manifest())
        .args(["--datasets", "iris", "--runs", "2", "--max-iter", "10", "--format", "jsonl"])
        .args(["--log"])
        .arg(dir.path().join("log2.csv"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let rows: Vec<serde_json::Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["algorithm"], "fpakm");
    assert_eq!(rows[2]["runs"], 2);
}

#[test]
fn invalid_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("log.csv");
    let unknown = bin()
        .args(["run", "--manifest"])
        .arg(manifest())
        .args(["--datasets", "nope", "--log"])
        .arg(&log)
        .output()
        .unwrap();
    assert_eq!(code(&unknown), 1);
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("nope"));

    let bad_flag = bin().args(["run", "--runs", "zero"]).output().unwrap();
    assert_eq!(code(&bad_flag), 1);
    let zero_runs = bin().args(["run", "--runs", "0"]).output().unwrap();
    assert_eq!(code(&zero_runs), 1);
    let missing_manifest = bin()
        .args(["run", "--manifest"])
        .arg(dir.path().join("absent.toml"))
        .output()
        .unwrap();
    assert_eq!(code(&missing_manifest), 1);
}

#[test]
fn unwritable_output_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["run", "--manifest"])
        .arg(manifest())
        .args(["--datasets", "iris", "--algorithms", "kmeans", "--runs", "1", "--out"])
        .arg(dir.path().join("no/such/dir/report.csv"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn print_config_round_trips() {
    let out = bin()
        .args(["run", "--print-config", "--runs", "4", "--limit", "3"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let cfg = fpakm::bench::ExperimentConfig::parse(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(cfg.runs, 4);
    assert_eq!(cfg.fpakm.limit, 3);
}
