use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn kszlab(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kszlab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn norm(sub: &str, input: &str) -> f64 {
    let out = kszlab(&["norms", sub], Some(input));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["value"].as_f64().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn norms_subcommands() {
    assert!((norm("weak", r#"{"x": [1, 1, 1, 1], "q": 2}"#) - 2.0).abs() < 1e-12);
    assert!((norm("marcinkiewicz", r#"{"x": [3, [0, -4]], "w": [1, 0.5]}"#) - 14.0 / 3.0).abs() < 1e-12);
    assert!((norm("orlicz-seq", r#"{"x": [3, 4], "phi": {"kind": "power", "p": 2}}"#) - 5.0).abs() < 1e-9);
    assert!(norm("orlicz-seq", r#"{"x": [1, 2], "phi": {"kind": "exp", "r": 2}}"#) > 0.0);
    assert!((norm("l-hn", r#"{"xi": [2.5]}"#) - 2.5).abs() < 1e-12);
    assert!((norm("k-functional", r#"{"x": [1, 1], "t": 1}"#) - 2f64.sqrt()).abs() < 1e-12);
    let k = norm("k-functional", r#"{"xi": [0, 0, 2], "s": 1, "t": 1, "k_lo": 0}"#);
    assert!((k - 0.5).abs() < 1e-12);
}

#[test]
fn norms_reject_bad_input() {
    assert_eq!(kszlab(&["norms", "weak"], Some("{not json")).status.code(), Some(2));
    assert_eq!(kszlab(&["norms", "weak"], Some(r#"{"x": [1], "q": 0}"#)).status.code(), Some(2));
    assert_eq!(kszlab(&["norms", "k-functional"], Some(r#"{"x": [1], "t": -1}"#)).status.code(), Some(2));
}

#[test]
fn lift_prints_stats_and_poly() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "d.json", r#"{"coeffs": [[12, 1.0], [1, [0.5, -0.5]]]}"#);
    let out = kszlab(&["lift", "--input", &input], None);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["stats"]["pi"], 5);
    assert_eq!(v["stats"]["omega"], 3);
    assert_eq!(v["poly"]["n"], 5);
    assert_eq!(v["poly"]["degree"], 3);
    let terms = v["poly"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert!(terms.iter().any(|t| t["alpha"] == serde_json::json!([2, 1, 0, 0, 0])));

    let out = kszlab(&["lift", "--input", &input, "--stats-only"], None);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.get("poly").is_none());

    let bad = write(dir.path(), "bad.json", r#"{"coeffs": [[0, 1.0]]}"#);
    assert_eq!(kszlab(&["lift", "--input", &bad], None).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(kszlab(&["lift", "--input", missing.to_str().unwrap()], None).status.code(), Some(2));
}

const SMALL_E4: &str =
    r#"{"id": "E4_SpectralBilinear", "family": {"kind": "RademacherReal"}, "r": 2, "sizes": [4, 8, 16], "trials": 30, "seed": 42}"#;

#[test]
fn experiment_run_writes_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", SMALL_E4);
    let out_path = dir.path().join("report.json");
    let csv_path = dir.path().join("report.csv");
    let out = kszlab(
        &["experiment", "run", "--config", &cfg, "--out", out_path.to_str().unwrap(), "--csv", csv_path.to_str().unwrap()],
        None,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for row in rows {
        let ratio = row["ratio"].as_f64().unwrap();
        assert_eq!(ratio, row["lhs"].as_f64().unwrap() / row["rhs"].as_f64().unwrap());
    }
    assert!(report["slope"]["value"].is_f64());
    assert!(report["slope"]["half_width"].is_f64());
    assert_eq!(report["meta"]["spec"]["id"], "E4_SpectralBilinear");
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "size,lhs,rhs,ratio,stderr");
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn experiment_run_is_reproducible_and_seedable() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", SMALL_E4);
    let run = |name: &str, extra: &[&str]| {
        let p = dir.path().join(name);
        let mut args = vec!["experiment", "run", "--config", &cfg, "--out", p.to_str().unwrap()];
        args.extend_from_slice(extra);
        assert!(kszlab(&args, None).status.success());
        std::fs::read(p).unwrap()
    };
    let a = run("a.json", &["--threads", "1"]);
    let b = run("b.json", &["--threads", "3"]);
    assert_eq!(a, b);
    let c = run("c.json", &["--seed", "7"]);
    assert_ne!(a, c);
    let d = run("d.json", &["--seed", "7", "--threads", "2"]);
    assert_eq!(c, d);
}

#[test]
fn experiment_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let out = out.to_str().unwrap();

    let over_cap = write(
        dir.path(),
        "cap.json",
        r#"{"id": "E3_CubeQuadratic", "family": {"kind": "RademacherReal"}, "r": 2, "sizes": [8, 20], "trials": 5, "seed": 1}"#,
    );
    let res = kszlab(&["experiment", "run", "--config", &over_cap, "--out", out], None);
    assert_eq!(res.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&res.stderr).contains("E3_CubeQuadratic"));

    let unsorted = write(
        dir.path(),
        "bad.json",
        r#"{"id": "E4_SpectralBilinear", "family": {"kind": "RademacherReal"}, "r": 2, "sizes": [8, 4], "trials": 5, "seed": 1}"#,
    );
    assert_eq!(kszlab(&["experiment", "run", "--config", &unsorted, "--out", out], None).status.code(), Some(2));
    let garbage = write(dir.path(), "garbage.json", "[1, 2");
    assert_eq!(kszlab(&["experiment", "run", "--config", &garbage, "--out", out], None).status.code(), Some(2));

    // tiny matrices drift off the registered ratio trend
    let off_band = write(
        dir.path(),
        "band.json",
        r#"{"id": "E1_MatrixKSZ", "family": {"kind": "GaussianReal"}, "r": 2, "sizes": [1, 2, 3], "trials": 100, "seed": 3}"#,
    );
    let unchecked = kszlab(&["experiment", "run", "--config", &off_band, "--out", out], None);
    assert_eq!(unchecked.status.code(), Some(0));
    let checked = kszlab(&["experiment", "run", "--config", &off_band, "--out", out, "--check"], None);
    assert_eq!(checked.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&checked.stderr).contains("band violation"));
}
