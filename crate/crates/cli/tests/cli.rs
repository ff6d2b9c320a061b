use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const EXAMPLE: &str = "0.259,0.463,0.278\n0.328,0.172,0.500\n0.425,0.225,0.350\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_alphacap"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, contents).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn capacity_identity_is_log3() {
    let dir = TempDir::new().unwrap();
    let ch = write(&dir, "id.csv", "1,0,0\n0,1,0\n0,0,1\n");
    let out = run(&[
        "capacity",
        "--algorithm",
        "arimoto",
        "--alpha",
        "2.0",
        "--channel",
        s(&ch),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stderr.is_empty());
    let v = json(&out);
    assert!((v["value"].as_f64().unwrap() - 3f64.ln()).abs() < 1e-9);
    assert_eq!(v["units"], "nats");
    assert_eq!(v["termination"], "converged");
}

#[test]
fn record_round_trips_and_digest_is_stable() {
    let dir = TempDir::new().unwrap();
    let ch = write(&dir, "w.csv", EXAMPLE);
    let args = [
        "capacity",
        "--algorithm",
        "csiszar",
        "--alpha",
        "2",
        "--channel",
        s(&ch),
    ];
    let a = run(&args);
    let b = run(&args);
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    assert_eq!(v["channel_digest"], json(&b)["channel_digest"]);
    assert_eq!(v["channel_digest"].as_str().unwrap().len(), 64);
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(
        keys,
        [
            "algorithm",
            "alpha",
            "channel_digest",
            "epsilon",
            "init",
            "iterations",
            "termination",
            "units",
            "value",
            "wall_time_ms"
        ]
    );
}

#[test]
fn json_channel_and_bits() {
    let dir = TempDir::new().unwrap();
    let ch = write(&dir, "id.json", r#"{"matrix": [[1, 0], [0, 1]]}"#);
    let out = run(&[
        "capacity",
        "--algorithm",
        "jo",
        "--alpha",
        "3",
        "--channel",
        s(&ch),
        "--bits",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(v["units"], "bits");
}

#[test]
fn trace_has_iterations_plus_one_rows() {
    let dir = TempDir::new().unwrap();
    let ch = write(&dir, "w.csv", EXAMPLE);
    let tr = dir.path().join("t.csv");
    let out = run(&[
        "capacity",
        "--algorithm",
        "jo",
        "--alpha",
        "2",
        "--channel",
        s(&ch),
        "--trace",
        s(&tr),
    ]);
    let n = json(&out)["iterations"].as_u64().unwrap() as usize;
    let text = fs::read_to_string(&tr).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,F"));
    assert_eq!(lines.count(), n + 1);
}

#[test]
fn custom_init_file() {
    let dir = TempDir::new().unwrap();
    let ch = write(&dir, "w.csv", EXAMPLE);
    let init = write(&dir, "j.csv", "0.1,0.1,0.1\n0.1,0.1,0.1\n0.1,0.1,0.2\n");
    let out = run(&[
        "capacity",
        "--algorithm",
        "csiszar",
        "--alpha",
        "2",
        "--channel",
        s(&ch),
        "--init",
        s(&init),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["init"], "custom");

    let zero = write(&dir, "z.csv", "0.2,0,0.1\n0.1,0.1,0.1\n0.1,0.1,0.2\n");
    let out = run(&[
        "capacity",
        "--algorithm",
        "csiszar",
        "--alpha",
        "2",
        "--channel",
        s(&ch),
        "--init",
        s(&zero),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let ch = write(&dir, "w.csv", EXAMPLE);
    let bad = write(&dir, "bad.csv", "0.5,0.6\n0.5,0.5\n");

    let out = run(&[
        "capacity",
        "--algorithm",
        "jo",
        "--alpha",
        "0.5",
        "--channel",
        s(&ch),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("(1, inf)"));

    let out = run(&[
        "capacity",
        "--algorithm",
        "arimoto",
        "--alpha",
        "2",
        "--channel",
        s(&bad),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 0"));

    let missing = dir.path().join("missing.csv");
    let out = run(&[
        "capacity",
        "--algorithm",
        "arimoto",
        "--alpha",
        "2",
        "--channel",
        s(&missing),
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&[
        "capacity",
        "--algorithm",
        "arimoto",
        "--alpha",
        "1",
        "--channel",
        s(&ch),
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["capacity", "--nonsense"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn renormalize_is_opt_in() {
    let dir = TempDir::new().unwrap();
    let ch = write(&dir, "w.csv", "0.5,0.5000000001\n-0.0000000001,1\n");
    let base = [
        "capacity",
        "--algorithm",
        "arimoto",
        "--alpha",
        "2",
        "--channel",
        s(&ch),
    ];
    assert_eq!(run(&base).status.code(), Some(1));
    let mut with = base.to_vec();
    with.push("--renormalize");
    assert_eq!(run(&with).status.code(), Some(0));
}

#[test]
fn iteration_limit_exits_two_with_result() {
    let dir = TempDir::new().unwrap();
    let ch = write(&dir, "w.csv", EXAMPLE);
    let out = run(&[
        "capacity",
        "--algorithm",
        "jo",
        "--alpha",
        "1.03",
        "--channel",
        s(&ch),
        "--max-iter",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["termination"], "max_iterations");
    assert_eq!(v["iterations"], 5);
    assert!(!out.stderr.is_empty());
}

#[test]
fn compare_identity_rows_are_log3() {
    let dir = TempDir::new().unwrap();
    let ch = write(&dir, "id.csv", "1,0,0\n0,1,0\n0,0,1\n");
    let traces = dir.path().join("traces");
    let out = run(&[
        "compare",
        "--channel",
        s(&ch),
        "--alphas",
        "2.0",
        "--format",
        "csv",
        "--traces-dir",
        s(&traces),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("algorithm,init,alpha,value,iterations,termination")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    for row in &rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[3], format!("{:.9}", 3f64.ln()));
        let trace = traces.join(format!("{}_{}_alpha2.csv", fields[0], fields[1]));
        let n: usize = fields[4].parse().unwrap();
        assert_eq!(fs::read_to_string(trace).unwrap().lines().count(), n + 2);
    }
}

#[test]
fn compare_text_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let ch = write(&dir, "w.csv", EXAMPLE);
    let args = ["compare", "--channel", s(&ch), "--alphas", "2,5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("arimoto / uniform-x"));
}

#[test]
fn compare_rejects_alpha_below_one() {
    let dir = TempDir::new().unwrap();
    let ch = write(&dir, "w.csv", EXAMPLE);
    assert_eq!(
        run(&["compare", "--channel", s(&ch), "--alphas", "0.5"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn exponent_below_and_above_capacity() {
    let dir = TempDir::new().unwrap();
    let id = write(&dir, "id.csv", "1,0,0\n0,1,0\n0,0,1\n");
    let out = run(&[
        "exponent",
        "--channel",
        s(&id),
        "--rate",
        "0.5",
        "--rho-grid",
        "40",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["exponent"].as_f64().unwrap().abs() < 0.05);

    let ch = write(&dir, "w.csv", EXAMPLE);
    let sweep = dir.path().join("sweep.csv");
    let out = run(&[
        "exponent",
        "--channel",
        s(&ch),
        "--rate",
        "1.0",
        "--rho-grid",
        "20",
        "--sweep",
        s(&sweep),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["exponent"].as_f64().unwrap() > 0.0);
    let text = fs::read_to_string(&sweep).unwrap();
    assert!(text.starts_with("rho,min_e0\n"));
    assert_eq!(text.lines().count(), 21);

    let out = run(&[
        "exponent",
        "--channel",
        s(&ch),
        "--rate",
        "1.0",
        "--rho-grid",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gen_channel_is_byte_identical() {
    let a = run(&["gen-channel", "--rows", "2", "--cols", "2", "--seed", "7"]);
    let b = run(&["gen-channel", "--rows", "2", "--cols", "2", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let out = run(&["gen-channel", "--rows", "3", "--cols", "3", "--seed", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines() {
        let sum: f64 = line.split(',').map(|v| v.parse::<f64>().unwrap()).sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }
    assert_eq!(
        run(&["gen-channel", "--rows", "0", "--cols", "3", "--seed", "1"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn generated_channel_feeds_capacity() {
    let dir = TempDir::new().unwrap();
    let out = run(&["gen-channel", "--rows", "3", "--cols", "4", "--seed", "11"]);
    let ch = write(&dir, "g.csv", std::str::from_utf8(&out.stdout).unwrap());
    let out = run(&[
        "capacity",
        "--algorithm",
        "csiszar",
        "--alpha",
        "1.5",
        "--channel",
        s(&ch),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn oracle_matches_solver() {
    let dir = TempDir::new().unwrap();
    let ch = write(&dir, "w.csv", EXAMPLE);
    let out = run(&["oracle", "--channel", s(&ch), "--alpha", "2", "--refine"]);
    assert_eq!(out.status.code(), Some(0));
    let oracle = json(&out)["value"].as_f64().unwrap();
    let solver = run(&[
        "capacity",
        "--algorithm",
        "arimoto",
        "--alpha",
        "2",
        "--channel",
        s(&ch),
    ]);
    let solver = json(&solver)["value"].as_f64().unwrap();
    assert!((oracle - solver).abs() < 1e-6, "{oracle} vs {solver}");
}

#[test]
fn oracle_identity_argmax_near_uniform() {
    let dir = TempDir::new().unwrap();
    let ch = write(&dir, "id.csv", "1,0,0\n0,1,0\n0,0,1\n");
    let out = run(&[
        "oracle",
        "--channel",
        s(&ch),
        "--alpha",
        "2",
        "--step",
        "0.01",
    ]);
    let v = json(&out);
    for p in v["argmax"].as_array().unwrap() {
        assert!((p.as_f64().unwrap() - 1.0 / 3.0).abs() <= 0.01);
    }
}

#[test]
fn oracle_grid_guard() {
    let dir = TempDir::new().unwrap();
    let ch = write(&dir, "w4.csv", "0.5,0.5\n0.2,0.8\n0.7,0.3\n0.1,0.9\n");
    let out = run(&[
        "oracle",
        "--channel",
        s(&ch),
        "--alpha",
        "2",
        "--step",
        "1e-9",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));

    let out = bin()
        .args([
            "oracle",
            "--channel",
            s(&ch),
            "--alpha",
            "2",
            "--step",
            "0.1",
        ])
        .env("ALPHACAP_MAX_GRID", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
