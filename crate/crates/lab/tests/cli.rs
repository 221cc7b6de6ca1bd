//! End-to-end checks of the `lab` binary: exit codes, written files, and
//! byte-stable reruns. Exit status is part of the interface (0 clean, 1 for
//! a blocking violation, 2 for configuration errors), so every failure mode
//! here pins the code it must produce.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use geomlab::config::ConfigFile;
use geomlab::euclid::max_collinear;

fn lab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lab"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn list_experiments_covers_the_registry() {
    let output = lab().arg("list-experiments").output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert_eq!(text.lines().count(), 13, "one line per experiment:\n{text}");
    assert!(text.contains("ff_falconer"));
    assert!(text.contains("named_example"));
}

#[test]
fn missing_config_file_is_a_config_error() {
    let output = lab().args(["run", "/nonexistent/nowhere.cfg"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).starts_with("error:"));
}

#[test]
fn malformed_config_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "dup.cfg", "experiment = beck\nsets = 2\nsets = 3\n");
    let output = lab().arg("run").arg(&config).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("duplicate"), "stderr: {}", stderr(&output));
}

#[test]
fn unknown_experiment_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "odd.cfg", "experiment = mystery\n");
    let output = lab().arg("run").arg(&config).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("list-experiments"), "stderr: {}", stderr(&output));
}

#[test]
fn unknown_key_is_named_in_the_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "extra.cfg", "experiment = distances\nn = 2\np = 4\nbogus = 1\n");
    let output = lab().arg("run").arg(&config).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    let err = stderr(&output);
    assert!(err.contains("bogus") && err.contains("distances"), "stderr: {err}");
}

#[test]
fn clean_sweep_exits_zero_and_writes_both_reports() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "falconer.cfg",
        "experiment = ff_falconer\np = 7\nn = 2\nk = 1\nsets = 200\nmin_size = 1\nmax_size = 30\n",
    );
    let out = dir.path().join("out/report");
    let output =
        lab().arg("run").arg(&config).args(["--seed", "1", "--out"]).arg(&out).output().unwrap();
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("experiment: ff_falconer"));
    assert!(text.contains("(0 blocking violations)"), "stdout: {text}");

    let jsonl = fs::read_to_string(out.with_extension("jsonl")).unwrap();
    assert!(!jsonl.is_empty() && jsonl.lines().all(|l| l.starts_with('{')));
    let csv = fs::read_to_string(out.with_extension("csv")).unwrap();
    let row = csv.lines().nth(1).unwrap();
    assert!(row.starts_with("orth_exceptional,"));
    assert_eq!(row.split(',').nth(2), Some("0"), "violation column: {row}");
}

#[test]
fn empty_sweep_writes_an_empty_report_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "none.cfg", "experiment = euclid_incidence\nconfigs = 0\n");
    let out = dir.path().join("report");
    let output = lab().arg("run").arg(&config).arg("--out").arg(&out).output().unwrap();
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    assert_eq!(fs::read_to_string(out.with_extension("jsonl")).unwrap(), "");
    assert_eq!(
        fs::read_to_string(out.with_extension("csv")).unwrap(),
        "bound_id,instances,violations,max_ratio,min_ratio\n"
    );
}

#[test]
fn named_subfield_example_reports_three_exceptional_slopes() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "sub.cfg", "experiment = named_example\nname = subfield\np = 3\n");
    let out = dir.path().join("report");
    let output = lab().arg("run").arg(&config).arg("--out").arg(&out).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    let jsonl = fs::read_to_string(out.with_extension("jsonl")).unwrap();
    assert!(jsonl.contains("\"exceptional_slopes\":\"3\""), "jsonl: {jsonl}");
    assert!(stdout(&output).contains("subfield_exceptional: 1 instances, 0 violations"));
}

#[test]
fn seed_comes_from_the_flag_then_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "seeded.cfg",
        "experiment = euclid_incidence\nconfigs = 1\nseed = 9\n",
    );
    let out = dir.path().join("report");
    let from_file = lab().arg("run").arg(&config).arg("--out").arg(&out).output().unwrap();
    assert!(stdout(&from_file).contains("seed: 9"));
    let from_flag =
        lab().arg("run").arg(&config).args(["--seed", "4", "--out"]).arg(&out).output().unwrap();
    assert!(stdout(&from_flag).contains("seed: 4"));
}

#[test]
fn output_key_in_the_config_names_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "out.cfg",
        "experiment = euclid_incidence\nconfigs = 1\noutput = nested/custom\n",
    );
    let output = lab().current_dir(dir.path()).arg("run").arg(&config).output().unwrap();
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    assert!(dir.path().join("nested/custom.jsonl").is_file());
    assert!(dir.path().join("nested/custom.csv").is_file());
}

#[test]
fn jobs_flag_does_not_change_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "jobs.cfg",
        "experiment = ff_falconer\np = 5\nn = 2\nk = 1\nsets = 8\nset_size = 10\n",
    );
    let run = |out: &str, jobs: &str| {
        let base = dir.path().join(out);
        let output = lab()
            .arg("run")
            .arg(&config)
            .args(["--jobs", jobs, "--out"])
            .arg(&base)
            .output()
            .unwrap();
        assert_eq!(output.status.code(), Some(0));
        fs::read(base.with_extension("jsonl")).unwrap()
    };
    assert_eq!(run("serial", "1"), run("wide", "4"));
}

#[test]
fn cap_flag_and_environment_bound_enumerations() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "big.cfg", "experiment = distances\nn = 3\np = 4\n");
    let out = dir.path().join("report");

    let flagged = lab()
        .arg("run")
        .arg(&config)
        .args(["--cap", "10", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(flagged.status.code(), Some(2));
    assert!(stderr(&flagged).contains("cap of 10"), "stderr: {}", stderr(&flagged));

    let from_env = lab()
        .arg("run")
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .env("LAB_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(from_env.status.code(), Some(2), "the environment cap applies without a flag");

    let flag_wins = lab()
        .arg("run")
        .arg(&config)
        .args(["--cap", "1000", "--out"])
        .arg(&out)
        .env("LAB_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0), "an explicit flag overrides the environment");

    let bad_env = lab()
        .arg("run")
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .env("LAB_CAP", "many")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
    assert!(stderr(&bad_env).contains("LAB_CAP"));
}

#[test]
fn grid_corpus_writes_one_hundred_lattice_points() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "grid.cfg", "generator = grid\nrows = 10\ncols = 10\n");
    let out_dir = dir.path().join("corpus");
    let output =
        lab().arg("corpus").arg(&spec).arg("--out").arg(&out_dir).output().unwrap();
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let item = fs::read_to_string(out_dir.join("grid-000.cfg")).unwrap();
    let parsed = ConfigFile::parse(&item).unwrap();
    assert_eq!(parsed.points().len(), 100);
}

#[test]
fn corpus_regeneration_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "noise.cfg",
        "generator = line_plus_noise\nsize = 20\non_line = 3/4\n",
    );
    let generate = |out: &str| {
        let out_dir = dir.path().join(out);
        let output = lab()
            .arg("corpus")
            .arg(&spec)
            .args(["--seed", "7", "--out"])
            .arg(&out_dir)
            .output()
            .unwrap();
        assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
        fs::read_to_string(out_dir.join("line_plus_noise-000.cfg")).unwrap()
    };
    let first = generate("a");
    assert_eq!(first, generate("b"), "same spec and seed, same bytes");

    let parsed = ConfigFile::parse(&first).unwrap();
    assert_eq!(parsed.points().len(), 20);
    assert_eq!(max_collinear(parsed.points()).unwrap(), 15, "three quarters share the carrier");
}

#[test]
fn fp_corpus_draws_the_requested_distinct_points() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "fp.cfg",
        "generator = uniform_random_fp\np = 5\nn = 2\nsize = 12\n",
    );
    let out_dir = dir.path().join("corpus");
    let output = lab()
        .arg("corpus")
        .arg(&spec)
        .args(["--seed", "9", "--out"])
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let parsed =
        ConfigFile::parse(&fs::read_to_string(out_dir.join("uniform_random_fp-000.cfg")).unwrap())
            .unwrap();
    let distinct: std::collections::BTreeSet<&Vec<u64>> = parsed.ff_points().iter().collect();
    assert_eq!(distinct.len(), 12);
}

#[test]
fn generated_corpus_items_run_directly() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "beck.cfg",
        "generator = line_plus_noise\nsize = 12\non_line = 1/2\nexperiment = beck\n",
    );
    let out_dir = dir.path().join("corpus");
    let generated = lab().arg("corpus").arg(&spec).arg("--out").arg(&out_dir).output().unwrap();
    assert_eq!(generated.status.code(), Some(0), "stderr: {}", stderr(&generated));

    let item = out_dir.join("line_plus_noise-000.cfg");
    let out = dir.path().join("report");
    let ran = lab().arg("run").arg(&item).arg("--out").arg(&out).output().unwrap();
    assert_eq!(ran.status.code(), Some(0), "stderr: {}", stderr(&ran));
    assert!(stdout(&ran).contains("beck_dichotomy"), "stdout: {}", stdout(&ran));
}

#[test]
fn unknown_generator_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "odd.cfg", "generator = surprise\n");
    let output = lab().arg("corpus").arg(&spec).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("surprise"), "stderr: {}", stderr(&output));
}
