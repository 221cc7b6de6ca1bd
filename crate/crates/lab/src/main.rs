//! The `lab` binary: run experiments, generate corpora, list the registry.
//!
//! Exit codes are part of the interface: 0 for a clean run, 1 when at least
//! one blocking report failed, 2 for configuration or I/O errors (clap uses
//! 2 for usage errors as well). Tracked reports never affect the exit code.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{ensure, Context, Result};
use clap::{Parser, Subcommand};

use geomlab::config::ConfigFile;
use geomlab::report::{summarize, write_jsonl, write_summary_csv};
use lab::{corpus, experiments, Settings};

#[derive(Parser)]
#[command(name = "lab", version, about = "Seeded geometry experiments with exact bound checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment from a plain-text configuration file.
    Run {
        /// Configuration file (`key = value` lines plus optional records).
        config: PathBuf,
        /// Master seed; overrides the file's `seed` key.
        #[arg(long)]
        seed: Option<u64>,
        /// Output stem; writes `<out>.jsonl` and `<out>.csv`. Overrides the
        /// file's `output` key (default `report`).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Enumeration cap in points. Defaults to the LAB_CAP environment
        /// variable when set, else one million.
        #[arg(long)]
        cap: Option<u64>,
        /// Worker threads (default: one per core).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Generate corpus configuration files from a generator spec.
    Corpus {
        /// Generator spec file (`generator = ...` plus its parameters).
        spec: PathBuf,
        /// Master seed; overrides the file's `seed` key.
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory (default `corpus`).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Enumeration cap in points, as for `run`.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Print the experiment registry, one name and summary per line.
    ListExperiments,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns the number of blocking violations.
fn dispatch(cli: Cli) -> Result<u64> {
    match cli.command {
        Command::Run { config, seed, out, cap, jobs } => run(config, seed, out, cap, jobs),
        Command::Corpus { spec, seed, out, cap } => generate_corpus(spec, seed, out, cap),
        Command::ListExperiments => {
            for e in experiments::Experiment::ALL {
                println!("{:<24} {}", e.name(), e.summary());
            }
            Ok(0)
        }
    }
}

fn read_config(path: &PathBuf) -> Result<ConfigFile> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ConfigFile::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn resolve_cap(flag: Option<u64>) -> Result<u64> {
    let cap = match flag {
        Some(cap) => cap,
        None => match std::env::var("LAB_CAP") {
            Ok(text) => text
                .trim()
                .parse()
                .with_context(|| format!("LAB_CAP: expected a point count, got `{text}`"))?,
            Err(_) => geomlab::DEFAULT_POINT_CAP,
        },
    };
    ensure!(cap >= 1, "the enumeration cap must be positive");
    Ok(cap)
}

fn run(
    config: PathBuf,
    seed: Option<u64>,
    out: Option<PathBuf>,
    cap: Option<u64>,
    jobs: Option<usize>,
) -> Result<u64> {
    let file = read_config(&config)?;
    let seed = match seed {
        Some(s) => s,
        None => file.get_u64("seed")?.unwrap_or(0),
    };
    let out = out
        .or_else(|| file.get("output").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("report"));
    let settings = Settings { seed, cap: resolve_cap(cap)?, jobs };

    let reports = experiments::run_experiment(&file, &settings)?;
    let violations = experiments::blocking_violations(&reports);

    let jsonl_path = out.with_extension("jsonl");
    let csv_path = out.with_extension("csv");
    if let Some(dir) = jsonl_path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let jsonl = fs::File::create(&jsonl_path)
        .with_context(|| format!("creating {}", jsonl_path.display()))?;
    write_jsonl(jsonl, &reports).context("writing the JSON-lines report")?;
    let csv =
        fs::File::create(&csv_path).with_context(|| format!("creating {}", csv_path.display()))?;
    write_summary_csv(csv, &reports).context("writing the CSV summary")?;

    println!("experiment: {}", file.get("experiment").unwrap_or("?"));
    println!("seed: {seed}");
    for row in summarize(&reports) {
        println!("  {}: {} instances, {} violations", row.bound_id, row.instances, row.violations);
    }
    println!("reports: {} ({} blocking violations)", reports.len(), violations);
    println!("wrote {} and {}", jsonl_path.display(), csv_path.display());
    Ok(violations)
}

fn generate_corpus(
    spec: PathBuf,
    seed: Option<u64>,
    out: Option<PathBuf>,
    cap: Option<u64>,
) -> Result<u64> {
    let file = read_config(&spec)?;
    let seed = match seed {
        Some(s) => s,
        None => file.get_u64("seed")?.unwrap_or(0),
    };
    let out_dir = out.unwrap_or_else(|| PathBuf::from("corpus"));
    let files = corpus::generate(&file, seed, resolve_cap(cap)?)?;
    fs::create_dir_all(&out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    for (name, content) in &files {
        let path = out_dir.join(name);
        fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }
    Ok(0)
}
