use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bqe2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bqe2")).args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, body: &str) -> String {
    let p = dir.join("run.toml");
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn strip_timings(mut v: Value) -> Value {
    v["total_ms"] = Value::Null;
    for c in v["checks"].as_array_mut().unwrap() {
        c["elapsed_ms"] = Value::Null;
    }
    v
}

#[test]
fn list_has_every_check_with_a_formula() {
    let out = bqe2(&["list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert!(lines.len() >= 22);
    assert!(lines.iter().all(|l| l.split_whitespace().count() >= 4));
}

#[test]
fn list_ops_prints_leg_signatures() {
    let out = bqe2(&["list-ops"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("Psi ") && l.contains("(i,j)(k,l)")));
    assert!(text.lines().any(|l| l.starts_with("F ")));
}

#[test]
fn run_writes_both_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "checks = [\"C1\", \"C14\", \"C22\"]\n");
    let out_dir = dir.path().join("out");
    let out = bqe2(&["run", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let json: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("report.json")).unwrap()).unwrap();
    assert_eq!(json["schema_version"], 1);
    let checks = json["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert_eq!(json["summary"]["total"], 3);
    assert_eq!(json["summary"]["passed"], 3);

    let md = fs::read_to_string(out_dir.join("report.md")).unwrap();
    for c in checks {
        assert!(md.contains(c["id"].as_str().unwrap()));
        let formula = c["formula"].as_str().unwrap().replace('|', "\\|");
        assert!(md.contains(&formula), "{formula}");
    }
}

#[test]
fn same_seed_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "checks = [\"C2\", \"C7\", \"C20\"]\nseed = 7\n");
    let mut reports = Vec::new();
    for tag in ["a", "b"] {
        let out_dir = dir.path().join(tag);
        let out = bqe2(&["run", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let v: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("report.json")).unwrap()).unwrap();
        reports.push(strip_timings(v));
    }
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn failing_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "checks = [\"C4\"]\ntol_banded = 1e-30\n");
    let out = bqe2(&["run", "--config", &cfg, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let json: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(json["summary"]["failed"], 1);
}

#[test]
fn bad_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "q_modulus = 1.5\n");
    let out = bqe2(&["run", "--config", &cfg, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(0, 1)"));
    assert!(!dir.path().join("report.json").exists());

    let cfg = write_config(dir.path(), "q_modulus = \"half\"\n");
    assert_eq!(bqe2(&["run", "--config", &cfg]).status.code(), Some(2));
    assert_eq!(bqe2(&["run", "--config", "/no/such/file.toml"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bqe2(&["check", "C99"]).status.code(), Some(2));
    assert_eq!(bqe2(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bqe2(&["run"]).status.code(), Some(2));
}

#[test]
fn check_accepts_q_overrides() {
    let out = bqe2(&["check", "C2", "--q-mod", "0.6", "--q-arg-pi", "-1/5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["id"], "C2");
    assert_eq!(v["passed"], true);
}

#[test]
fn fourier_csv_rows_satisfy_symmetry() {
    let dir = tempfile::tempdir().unwrap();
    let out = bqe2(&["fourier", "--n-lo", "-3", "--n-hi", "3", "--m-max", "20", "--q-mod", "0.5", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_path(dir.path().join("fourier.csv")).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["n", "m", "value", "mirror", "symmetry_residual"]);
    let mut rows = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let res: f64 = rec[4].parse().unwrap();
        assert!(res <= 1e-9, "{rec:?}");
        rows += 1;
    }
    assert_eq!(rows, 7 * 41);
}

#[test]
fn sweep_tabulates_each_q() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "checks = [\"C1\", \"C5\", \"C14\"]\n");
    let out = bqe2(&[
        "sweep", "--q-mods", "0.5,0.7", "--q-args-pi", "0,1/3", "--config", &cfg, "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let rows: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("sweep.json")).unwrap()).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["cells"].as_array().unwrap().len() == 3));
}
