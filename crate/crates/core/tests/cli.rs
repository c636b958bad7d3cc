use std::fs;
use std::path::Path;
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_iet-cantor");

const GOLDEN: &str =
    r#"{"n": 2, "perm": [2, 1], "lambda": ["3/2-1/2*sqrt(5)", "-1/2+1/2*sqrt(5)"], "field": {"sqrt": 5}}"#;

fn run(dir: &Path, config: &str, extra: &[&str]) -> (i32, String) {
    let cfg = dir.join("config.json");
    fs::write(&cfg, config).unwrap();
    let out = Command::new(BIN)
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(dir.join("out"))
        .args(extra)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn free_spectrum_is_one_band() {
    let dir = tempfile::tempdir().unwrap();
    let (code, err) = run(
        dir.path(),
        r#"{"task": "spectrum", "params": {"word": "1", "potential": ["0"]}}"#,
        &[],
    );
    assert_eq!(code, 0, "{err}");
    let csv = fs::read_to_string(dir.path().join("out/spectrum.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[1].starts_with("-2/1,2/1,4/1,"), "{}", rows[1]);
    let meta = json(&dir.path().join("out/metadata.json"));
    assert_eq!(meta["mode"], "exact");
    assert_eq!(meta["config_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn golden_condition_b_scores_are_positive() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = format!(r#"{{"iet": {GOLDEN}, "task": "condition-b", "params": {{"depth": 500}}}}"#);
    let (code, err) = run(dir.path(), &cfg, &[]);
    assert_eq!(code, 0, "{err}");
    let csv = fs::read_to_string(dir.path().join("out/condition_b.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,eta,eta_approx,score,score_approx"));
    let scores: Vec<f64> = lines
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(scores.len(), 500);
    assert!(scores.iter().all(|&s| s > 0.0));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), r#"{"task": "spectrum", "colour": 1}"#, &[]).0, 2);
    assert_eq!(run(dir.path(), r#"{"task": "tower"}"#, &[]).0, 2);
    assert_eq!(run(dir.path(), "{}", &["--task", "no-such-task"]).0, 2);
    let out = Command::new(BIN).arg("--mode").arg("fuzzy").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn math_errors_exit_one_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = format!(
        r#"{{"iet": {GOLDEN}, "task": "gordon-scan", "params": {{"max_k": 50, "window": [0, 20]}}}}"#
    );
    let (code, _) = run(dir.path(), &cfg, &[]);
    assert_eq!(code, 1);
    let report = json(&dir.path().join("out/error.json"));
    assert_eq!(report["error"], "SymbolicError::InsufficientWindow");
    let meta = json(&dir.path().join("out/metadata.json"));
    assert!(meta["artifacts"]
        .as_array()
        .unwrap()
        .iter()
        .any(|a| a == "error.json"));
}

#[test]
fn identical_runs_give_identical_payloads() {
    let cfg = format!(
        r#"{{"iet": {GOLDEN}, "task": "gordon-scan", "params": {{"max_k": 60, "samples": 3}}, "seed": 11}}"#
    );
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(run(a.path(), &cfg, &[]).0, 0);
    assert_eq!(run(b.path(), &cfg, &[]).0, 0);
    for name in ["gordon_scan.csv", "gordon_scan.json"] {
        let x = fs::read(a.path().join("out").join(name)).unwrap();
        let y = fs::read(b.path().join("out").join(name)).unwrap();
        assert_eq!(x, y, "{name}");
    }
    let mut ma = json(&a.path().join("out/metadata.json"));
    let mut mb = json(&b.path().join("out/metadata.json"));
    ma["timestamp_unix"] = 0.into();
    mb["timestamp_unix"] = 0.into();
    assert_eq!(ma, mb);
    // another seed draws other points
    let (code, _) = run(b.path(), &cfg, &["--seed", "12"]);
    assert_eq!(code, 0);
    assert_ne!(
        fs::read(a.path().join("out/gordon_scan.json")).unwrap(),
        fs::read(b.path().join("out/gordon_scan.json")).unwrap()
    );
}

#[test]
fn verify_prints_one_line_per_property() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(BIN)
        .args(["--task", "verify", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
}
