//! `cluster-bench` command-line interface.
//!
//! Exit codes: 0 success, 1 invalid input (arguments, configuration,
//! manifest or dataset validation), 2 runtime failure (a failed cell or an
//! unwritable output).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use super::config::{Algorithm, ExperimentConfig};
use super::manifest::{Manifest, ValidationStatus};
use super::report::{emit_report, write_run_log, ReportFormat, ReportOptions};
use super::run_experiment;
use crate::dataset::generate_artset1;
use crate::error::{Error, Result};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_RUNTIME: u8 = 2;

const DEFAULT_MANIFEST: &str = "data/manifest.toml";
const DEFAULT_LOG: &str = "cluster-bench.runs.csv";

#[derive(Debug, Parser)]
#[command(name = "cluster-bench", version, about = "Benchmark K-Means, FPA and FPAKM clustering")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the seeded experiment grid and report statistics.
    Run(Box<RunArgs>),
    /// Write the synthetic five-class Artset1 dataset as CSV.
    GenArtset1 {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every manifest entry against its declared shape.
    Validate {
        #[arg(long, default_value = DEFAULT_MANIFEST)]
        manifest: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Experiment configuration (TOML).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Dataset manifest; overrides the one named in the config.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub datasets: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    pub algorithms: Option<Vec<Algorithm>>,
    #[arg(long)]
    pub runs: Option<usize>,
    /// Base seed; run r uses seed + r.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads (0: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub flowers: Option<usize>,
    #[arg(long)]
    pub switch_p: Option<f64>,
    #[arg(long)]
    pub levy_lambda: Option<f64>,
    #[arg(long)]
    pub levy_scale: Option<f64>,
    #[arg(long)]
    pub no_clamp: bool,
    #[arg(long)]
    pub limit: Option<usize>,
    #[arg(long)]
    pub local_search_iters: Option<usize>,
    #[arg(long)]
    pub kmeans_max_iters: Option<usize>,
    #[arg(long)]
    pub kmeans_tol: Option<f64>,
    /// Let K-Means accept steps that raise the objective.
    #[arg(long)]
    pub kmeans_allow_increase: bool,
    /// Report file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "table")]
    pub format: ReportFormat,
    /// Per-run log (CSV). Defaults to `<out stem>.runs.csv` next to the
    /// report, or `cluster-bench.runs.csv` when printing to stdout.
    #[arg(long)]
    pub log: Option<PathBuf>,
    /// Omit wall-clock times so reruns are byte-identical.
    #[arg(long)]
    pub no_timing: bool,
    /// Write the resolved configuration as TOML and exit.
    #[arg(long)]
    pub print_config: bool,
}

impl RunArgs {
    /// Configuration file (or defaults) with every given flag applied.
    pub fn resolve_config(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(p) => ExperimentConfig::load(p)?,
            None => ExperimentConfig::default(),
        };
        if let Some(m) = &self.manifest {
            cfg.manifest = Some(m.clone());
        }
        if let Some(d) = &self.datasets {
            cfg.datasets = d.clone();
        }
        if let Some(a) = &self.algorithms {
            cfg.algorithms = a.clone();
        }
        macro_rules! over {
            ($($flag:ident => $($field:ident).+),* $(,)?) => {
                $(if let Some(v) = self.$flag { cfg.$($field).+ = v; })*
            };
        }
        over! {
            runs => runs,
            seed => base_seed,
            threads => threads,
            max_iter => fpa.max_iter,
            flowers => fpa.num_flowers,
            switch_p => fpa.switch_p,
            levy_lambda => fpa.levy_lambda,
            levy_scale => fpa.levy_scale,
            limit => fpakm.limit,
            local_search_iters => fpakm.local_search_iters,
            kmeans_max_iters => kmeans.max_iters,
            kmeans_tol => kmeans.tol,
        }
        if self.no_clamp {
            cfg.fpa.clamp_to_bounds = false;
        }
        if self.kmeans_allow_increase {
            cfg.kmeans.stop_on_increase = false;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn log_path(&self) -> PathBuf {
        if let Some(p) = &self.log {
            return p.clone();
        }
        match &self.out {
            Some(out) => {
                let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned());
                out.with_file_name(format!("{}.runs.csv", stem.unwrap_or_else(|| "report".into())))
            }
            None => PathBuf::from(DEFAULT_LOG),
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
}

fn run(args: &RunArgs) -> std::result::Result<u8, (u8, Error)> {
    let invalid = |e| (EXIT_INVALID, e);
    let runtime = |e| (EXIT_RUNTIME, e);
    let cfg = args.resolve_config().map_err(invalid)?;
    if args.print_config {
        print!("{}", cfg.to_toml());
        return Ok(EXIT_OK);
    }
    let manifest_path = cfg
        .manifest
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_MANIFEST));
    let manifest = Manifest::load(&manifest_path).map_err(invalid)?;
    let exp = run_experiment(&cfg, &manifest).map_err(|e| match e {
        Error::Validation { .. } | Error::Config(_) | Error::Manifest(_) => invalid(e),
        other => runtime(other),
    })?;
    for name in &exp.skipped {
        eprintln!("skipped {name}: optional dataset file not found");
    }

    let opts = ReportOptions {
        include_timing: !args.no_timing,
    };
    match &args.out {
        Some(p) => {
            let mut w = create(p).map_err(runtime)?;
            emit_report(&exp.stats, args.format, opts, &mut w).map_err(runtime)?;
            w.flush().map_err(|e| runtime(Error::Report(e.to_string())))?;
        }
        None => {
            let stdout = io::stdout();
            emit_report(&exp.stats, args.format, opts, stdout.lock()).map_err(runtime)?;
        }
    }
    let log = args.log_path();
    let mut w = create(&log).map_err(runtime)?;
    write_run_log(&exp.records, opts.include_timing, &mut w).map_err(runtime)?;

    let failures = exp.failures();
    if failures > 0 {
        for r in exp.records.iter().filter(|r| r.failed()) {
            eprintln!(
                "run failed: {} / {} run {} (seed {}): {}",
                r.dataset,
                r.algorithm,
                r.run,
                r.seed,
                r.error.as_deref().unwrap_or("")
            );
        }
        return Ok(EXIT_RUNTIME);
    }
    Ok(EXIT_OK)
}

fn gen_artset1(seed: u64, out: Option<&Path>) -> std::result::Result<u8, (u8, Error)> {
    let csv = generate_artset1(seed).to_csv_string();
    let written = match out {
        Some(p) => std::fs::write(p, csv).map_err(|source| Error::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => io::stdout()
            .write_all(csv.as_bytes())
            .map_err(|e| Error::Report(e.to_string())),
    };
    written.map(|_| EXIT_OK).map_err(|e| (EXIT_RUNTIME, e))
}

fn validate(manifest: &Path) -> std::result::Result<u8, (u8, Error)> {
    let m = Manifest::load(manifest).map_err(|e| (EXIT_INVALID, e))?;
    let reports = m.validate();
    for r in &reports {
        println!("{r}");
    }
    let failed = reports
        .iter()
        .any(|r| matches!(r.status, ValidationStatus::Failed(_)));
    Ok(if failed { EXIT_INVALID } else { EXIT_OK })
}

/// Parses `args` (including the program name) and executes the command.
pub fn run_cli<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Run(a) => run(a),
        Command::GenArtset1 { seed, out } => gen_artset1(*seed, out.as_deref()),
        Command::Validate { manifest } => validate(manifest),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err((code, e)) => {
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(extra: &[&str]) -> RunArgs {
        let mut argv = vec!["cluster-bench", "run"];
        argv.extend_from_slice(extra);
        match Cli::try_parse_from(argv).unwrap().command {
            Command::Run(a) => *a,
            _ => unreachable!(),
        }
    }

    #[test]
    fn flags_override_config() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("exp.toml");
        std::fs::write(&path, "runs = 4\nmanifest = \"m.toml\"\n[fpa]\nmax_iter = 9\n").unwrap();
        let p = path.to_str().unwrap();
        let cfg = run_args(&["--config", p, "--runs", "2", "--algorithms", "fpakm,kmeans", "--limit", "5"])
            .resolve_config()
            .unwrap();
        assert_eq!(cfg.runs, 2);
        assert_eq!(cfg.fpa.max_iter, 9);
        assert_eq!(cfg.fpakm.limit, 5);
        assert_eq!(cfg.algorithm_order(), vec![Algorithm::KMeans, Algorithm::Fpakm]);
        assert_eq!(cfg.manifest, Some(dir.path().join("m.toml")));
    }

    #[test]
    fn invalid_override_rejected() {
        assert!(run_args(&["--runs", "0"]).resolve_config().is_err());
        assert!(Cli::try_parse_from(["cluster-bench", "run", "--algorithms", "pso"]).is_err());
    }

    #[test]
    fn log_path_follows_report() {
        assert_eq!(
            run_args(&["--out", "out/report.csv"]).log_path(),
            PathBuf::from("out/report.runs.csv")
        );
        assert_eq!(run_args(&[]).log_path(), PathBuf::from(DEFAULT_LOG));
        assert_eq!(run_args(&["--log", "x.csv"]).log_path(), PathBuf::from("x.csv"));
    }
}
