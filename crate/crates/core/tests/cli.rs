//! End-to-end runs of the `linhyper` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linhyper"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn exact_reports_decimal_strings() {
    let v = json(&run(&["exact", "-r", "3", "-k", "3,3,3,3"]));
    assert_eq!(v["count_h"], "1");
    assert_eq!(v["count_l"], "0");
    assert_eq!(v["count_b"], "24");
}

#[test]
fn user_errors_exit_with_two() {
    let out = run(&["exact", "-r", "3", "-k", "1,1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not divide"));

    let out = run(&["exact", "-r", "3", "-k", "2,2,2,2,2,2,2,2,2,2,2,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("max-space"));

    assert_eq!(run(&["exact", "-r", "3", "-k", "1,-1,1"]).status.code(), Some(2));
    assert_eq!(run(&["exact", "-k", "1,1,1"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn estimate_csv_has_one_row_per_formula() {
    let out = run(&["estimate", "-r", "3", "-k", "1,1,1,1,1,1", "--format", "csv"]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), ["formula", "log_value", "value", "error_scale"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    let values: Vec<(&str, f64)> = rows.iter().map(|r| (&r[0], r[2].parse().unwrap())).collect();
    let expect = [("linear", 10.0), ("simple", 10.0), ("bigraph", 20.0), ("girth6", 1.0)];
    for ((name, v), (en, ev)) in values.iter().zip(expect) {
        assert_eq!(*name, en);
        assert!((v - ev).abs() < 1e-9, "{name} = {v}");
    }
}

#[test]
fn estimate_girth_for_twos() {
    let k = vec!["2"; 300].join(",");
    let v = json(&run(&["estimate", "-r", "3", "-k", &k]));
    let girth = v.as_array().unwrap().iter().find(|e| e["formula"] == "girth6").unwrap();
    assert!((girth["value"].as_f64().unwrap() - 0.36788).abs() < 1e-5);
}

#[test]
fn input_file_and_inline_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ds.json");
    std::fs::write(&path, r#"{"r": 3, "k": [3, 3, 3, 3]}"#).unwrap();
    let p = path.to_str().unwrap();
    let v = json(&run(&["exact", "--input", p]));
    assert_eq!(v["count_h"], "1");
    let v = json(&run(&["exact", "--input", p, "-k", "1,1,1,1,1,1"]));
    assert_eq!(v["count_l"], "10");
}

#[test]
fn classify_reads_graph_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(&path, r#"{"n_left": 2, "n_right": 2, "edges": [[1,1],[1,2],[2,1],[2,2]]}"#).unwrap();
    let v = json(&run(&["classify", "--input", path.to_str().unwrap()]));
    assert_eq!(v["d"], 1);
    assert_eq!(v["four_cycles"][0]["left"], serde_json::json!([1, 2]));
}

#[test]
fn sampling_is_reproducible_and_reports_seed() {
    let k = vec!["2"; 30].join(",");
    let a = run(&["sample", "-r", "3", "-k", &k, "--seed", "5"]);
    let b = run(&["sample", "-r", "3", "-k", &k, "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["metadata"]["seed"], 5);
    assert_eq!(v["metadata"]["d_trajectory"].as_array().unwrap().last().unwrap(), 0);

    let v = json(&run(&["sample", "-r", "3", "-k", "1,1,1", "--mode", "pairing"]));
    assert_eq!(v["metadata"]["seed"], 42);
}

#[test]
fn girth_replays_byte_identically() {
    let k = vec!["2"; 60].join(",");
    let args = ["girth", "-r", "3", "-k", &k, "--trials", "300", "--seed", "9", "--workers", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["trials"], 300);
    assert_eq!(run(&["girth", "-r", "3", "-k", &k, "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn verify_default_battery_passes() {
    let out = run(&["verify", "--ratio-check", "--format", "csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    assert!(reader.headers().unwrap().iter().any(|h| h == "c1_over_c0"));
    let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert!(rows.len() > 20);
    assert!(rows.iter().all(|r| &r[6] == "true" && &r[7] == "true"));
}

#[test]
fn verify_empty_battery_is_a_user_error() {
    let out = run(&["verify", "--max-n", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("battery is empty"));
}
