use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grunskylab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn write_input(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn entry(v: &Value, p: u64, q: u64) -> (f64, f64) {
    let e = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["p"] == p && e["q"] == q)
        .expect("entry present");
    (e["re"].as_f64().unwrap(), e["im"].as_f64().unwrap())
}

#[test]
fn grunsky_koebe_has_unit_w11() {
    let out = run(&["grunsky", "--family", "koebe"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["max_degree"], 8);
    let (re, im) = entry(&v, 1, 1);
    assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
}

#[test]
fn grunsky_entries_are_sorted() {
    let v = json(&run(&[
        "grunsky",
        "--family",
        "halfplane",
        "--max-degree",
        "6",
    ]));
    let keys: Vec<(u64, u64)> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["p"].as_u64().unwrap(), e["q"].as_u64().unwrap()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(keys.len(), 7 * 8 / 2);
}

#[test]
fn grunsky_zero_coefficients_give_zero_entries() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(
        dir.path(),
        "z.json",
        r#"{"coefficients": [[0,0],[0,0],[0,0],[0,0]]}"#,
    );
    let v = json(&run(&["grunsky", "--input", &input]));
    for e in v["entries"].as_array().unwrap() {
        assert_eq!(e["re"].as_f64().unwrap(), 0.0);
        assert_eq!(e["im"].as_f64().unwrap(), 0.0);
    }
}

#[test]
fn grunsky_threefold_koebe_has_zero_w13() {
    let v = json(&run(&["grunsky", "--family", "koebe", "--t", "3"]));
    let (re, im) = entry(&v, 1, 3);
    assert!(re.abs() < 1e-12 && im.abs() < 1e-12);
}

#[test]
fn verify_koebe_passes_with_zero_gap() {
    let out = run(&["verify", "--family", "koebe"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let first = &v["gaps"][0];
    assert_eq!(first["functional"], "weighted");
    assert_eq!(first["x"][0][0], 1.0);
    assert!(first["gap"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(v["holds"], true);
}

#[test]
fn verify_identity_is_all_zero() {
    let out = run(&["verify", "--family", "identity"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["max_residual"], 0.0);
}

#[test]
fn verify_large_coefficients_violate_inequalities() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(
        dir.path(),
        "big.json",
        r#"{"coefficients": [[1.9,0.3],[-1.2,1.7],[0.4,-1.8],[1.5,1.1]]}"#,
    );
    let out = run(&["verify", "--input", &input]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert!(v["max_residual"].as_f64().unwrap() <= 1e-10);
    assert_eq!(v["holds"], false);
}

#[test]
fn hankel_reports_reduction_for_odd_koebe() {
    let out = run(&["hankel", "--family", "koebe", "--t", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["reduction"], "a2_zero");
    assert!((v["h22_abs"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn hankel_accepts_input_family_form() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(
        dir.path(),
        "f.json",
        r#"{"family": {"name": "koebe", "theta": 0.0, "t": 3, "order": 6}}"#,
    );
    let v = json(&run(&["hankel", "--input", &input]));
    assert_eq!(v["reduction"], "a2_zero");
}

#[test]
fn bounds_lines_carry_expected_constants() {
    let out = run(&["bounds"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> = std::str::from_utf8(&out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let get = |name: &str| {
        lines
            .iter()
            .find(|l| l["name"] == name)
            .unwrap_or_else(|| panic!("{name} missing"))["computed_max"]
            .as_f64()
            .unwrap()
    };
    assert!((get("thm1_v") - 1.05).abs() < 1e-5);
    assert!((get("thm2_v") - (24.0 + 645f64.sqrt()) / 30.0).abs() < 1e-5);
}

#[test]
fn bounds_tight_tolerance_gives_same_values() {
    let loose = run(&["bounds"]);
    let tight = run(&["bounds", "--tol", "1e-12"]);
    assert_eq!(tight.status.code(), Some(0));
    let parse = |o: &Output| -> Vec<f64> {
        std::str::from_utf8(&o.stdout)
            .unwrap()
            .lines()
            .map(|l| {
                serde_json::from_str::<Value>(l).unwrap()["computed_max"]
                    .as_f64()
                    .unwrap()
            })
            .collect()
    };
    for (a, b) in parse(&loose).iter().zip(parse(&tight)) {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn search_reports_non_negative_slack() {
    let out = run(&[
        "search",
        "--objective",
        "a4_minus_a3",
        "--seed",
        "1",
        "--iterations",
        "2000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["slack"].as_f64().unwrap() >= 0.0);
    assert!((v["paper_bound"].as_f64().unwrap() - 2.10495).abs() < 1e-5);

    let v = json(&run(&[
        "search",
        "--objective",
        "h3_a2zero",
        "--seed",
        "1",
        "--iterations",
        "2000",
    ]));
    assert!(v["best_value"].as_f64().unwrap() <= 1.05 + 1e-6);
}

#[test]
fn search_with_zero_budget_returns_origin() {
    let v = json(&run(&[
        "search",
        "--objective",
        "a4_minus_a3",
        "--iterations",
        "0",
    ]));
    assert_eq!(v["best_value"], 0.0);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&[
        "search",
        "--objective",
        "a3_a2zero",
        "--iterations",
        "100",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(
        serde_json::from_str::<Value>(&text).unwrap()["objective"],
        "a3_a2zero"
    );
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    for body in [
        "{not json",
        r#"{"x": 1}"#,
        r#"{"coefficients": [[0,0]], "family": {"name": "koebe"}}"#,
    ] {
        let input = write_input(dir.path(), "bad.json", body);
        assert_eq!(
            run(&["verify", "--input", &input]).status.code(),
            Some(2),
            "{body}"
        );
    }
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(
        run(&["search", "--objective", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["grunsky", "--family", "parabola"]).status.code(),
        Some(2)
    );
}

#[test]
fn short_input_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(
        dir.path(),
        "short.json",
        r#"{"coefficients": [[0,0],[0,0]]}"#,
    );
    assert_eq!(run(&["hankel", "--input", &input]).status.code(), Some(3));
    assert_eq!(run(&["verify", "--input", &input]).status.code(), Some(3));
}

#[test]
fn invalid_thread_count_exits_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_grunskylab"))
        .args(["bounds"])
        .env("GRUNSKYLAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
