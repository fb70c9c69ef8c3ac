//! The `qentropy` binary: verbs, exit status, outputs and determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_qentropy");

const FIG2: &str = r#"
[scenario]
kind = "fig2_depolarizing"

[parameters]
d = 2
q_values = [0.2, 0.9]
starts = 4
seed = 11
tolerance = 1e-3
"#;

const DAMPING: &str = r#"
[scenario]
kind = "appendixB_damping"

[parameters]
t_start = 0.0
t_end = 2.0
t_step = 0.05
fd_step = 1e-4
exclusion = 0.1
tolerance = 1e-6
"#;

fn qentropy(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("QENTROPY_THREADS");
    if let Some(t) = threads {
        cmd.env("QENTROPY_THREADS", t);
    }
    cmd.output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn list_shows_catalog() {
    let o = qentropy(&["list"], None);
    assert!(o.status.success());
    for tag in [
        "fig1_gadc",
        "fig2_depolarizing",
        "appendixB_damping",
        "appendixB_oscillatory",
        "gaussian_bounds",
        "decoherence_measures",
        "custom",
    ] {
        assert!(stdout(&o).contains(tag), "missing {tag}");
    }
}

#[test]
fn validate_reports_problems() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_config(dir.path(), "good.toml", FIG2);
    assert!(qentropy(&["validate", "--config", &good], None).status.success());

    let bad = write_config(dir.path(), "bad.toml", &FIG2.replace("[0.2, 0.9]", "[1.5]"));
    let o = qentropy(&["validate", "--config", &bad], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("d^2/(d^2-1)"), "{}", stderr(&o));

    let empty = write_config(dir.path(), "empty.toml", "");
    let o = qentropy(&["validate", "--config", &empty], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("scenario.kind"));
    assert!(stderr(&o).contains("parameters"));

    let o = qentropy(&["validate", "--config", "/nonexistent.toml"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn run_writes_tables_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "fig2.toml", FIG2);
    let out = dir.path().join("out");
    let o = qentropy(&["run", "--config", &cfg, "--out", out.to_str().unwrap()], Some("1"));
    assert!(o.status.success(), "{}", stderr(&o));
    let table = fs::read_to_string(out.join("fig2_depolarizing.csv")).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("q,analytic,numeric,abs_error"));
    assert_eq!(lines.next().unwrap().split(',').next(), Some("2.000000000000e-1"));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["scenario"], "fig2_depolarizing");
    assert_eq!(report["passed"], true);
    assert_eq!(report["seed"], 11);
    assert_eq!(report["outputs"][0], "fig2_depolarizing.csv");
}

#[test]
fn failed_check_gives_nonzero_exit() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "damping.toml", DAMPING);
    let out = dir.path().join("out");
    let ok = qentropy(&["run", "--config", &cfg, "--out", out.to_str().unwrap()], None);
    assert!(ok.status.success());
    let strict = qentropy(&["run", "--config", &cfg, "--out", out.to_str().unwrap(), "--tol", "1e-12"], None);
    assert_eq!(strict.status.code(), Some(1));
    assert!(stdout(&strict).contains("FAIL"));
    let report = fs::read_to_string(out.join("report.json")).unwrap();
    assert!(report.contains("\"passed\": false"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "fig2.toml", FIG2);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = qentropy(&["run", "--config", &cfg, "--out", out.to_str().unwrap(), "--seed", "5"], None);
        assert!(o.status.success());
    }
    let name = "fig2_depolarizing.csv";
    assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap());
}

#[test]
fn output_dir_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("from_config");
    let text = format!("{DAMPING}\n[output]\ndir = {:?}\n", target.to_str().unwrap());
    let cfg = write_config(dir.path(), "damping.toml", &text);
    assert!(qentropy(&["run", "--config", &cfg], None).status.success());
    assert!(target.join("appendixB_damping.csv").exists());
}

#[test]
fn thread_variable_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "damping.toml", DAMPING);
    let out = dir.path().join("out");
    let o = qentropy(&["run", "--config", &cfg, "--out", out.to_str().unwrap()], Some("many"));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("QENTROPY_THREADS"));
}

#[test]
fn shipped_configs_validate() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut n = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            let o = qentropy(&["validate", "--config", path.to_str().unwrap()], None);
            assert!(o.status.success(), "{}: {}", path.display(), stderr(&o));
            n += 1;
        }
    }
    assert!(n >= 7);
}
