use std::process::{Command, Output};

use serde_json::Value;

fn run_with(args: &[&str], jobs_env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_potts-atlas"));
    cmd.args(args).env_remove("POTTS_ATLAS_JOBS");
    if let Some(j) = jobs_env {
        cmd.env("POTTS_ATLAS_JOBS", j);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_with(args, None)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn usage_error(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(2), "{args:?} should be a usage error");
    stderr(&o)
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&ok(&full)).unwrap()
}

const COMMANDS: &[&[&str]] = &[
    &["allowed-q", "--max-m", "6"],
    &["allowed-p", "--n", "1", "--m", "3", "--all"],
    &["allowed-p", "--n", "3", "--m", "7"],
    &["coeffs", "--n", "1", "--m", "3", "--series", "S1", "--M", "2"],
    &["coeffs", "--n", "2", "--m", "5", "--series", "C2", "--M", "1", "--range", "-4..6"],
    &["exponents", "--n", "1", "--m", "3"],
    &["scan", "--max-m", "12", "--target", "2"],
    &["duality", "words", "--length", "4"],
    &["duality", "words", "--length", "5", "--verify"],
    &["duality", "beta", "--model", "potts3", "--beta", "0.7"],
];

#[test]
fn allowed_q_examples() {
    let csv = ok(&["allowed-q", "--max-m", "3", "--format", "csv"]);
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    let qs: Vec<&str> = rows.iter().map(|r| r.split(',').nth(3).unwrap()).collect();
    assert_eq!(qs, ["2", "3", "1"]);
    let v = json(&["allowed-q", "--max-m", "2"]);
    assert_eq!(v["result"].as_array().unwrap().len(), 1);
    assert!(usage_error(&["allowed-q", "--max-m", "1"]).contains("max-m must be ≥ 2"));
}

#[test]
fn allowed_p_examples() {
    let v = json(&["allowed-p", "--n", "1", "--m", "3"]);
    let ps: Vec<f64> = v["result"].as_array().unwrap().iter().map(|s| s["p_approx"].as_f64().unwrap()).collect();
    assert_eq!(ps, [2.0, 1.0, 3.0, 1.5]);
    let all = json(&["allowed-p", "--n", "1", "--m", "3", "--all"]);
    let extra: Vec<&Value> = all["result"].as_array().unwrap().iter().filter(|s| s["physical"] == false).collect();
    assert_eq!(extra.len(), 1);
    assert_eq!(extra[0]["p"]["coeffs"][0], "0");
    assert!(usage_error(&["allowed-p", "--n", "2", "--m", "4"]).contains("n and m must be coprime"));
    usage_error(&["allowed-p", "--n", "5", "--m", "3"]);
}

#[test]
fn coeffs_examples() {
    let v = json(&["coeffs", "--n", "1", "--m", "3", "--series", "S1", "--M", "2"]);
    let entries = v["result"]["entries"].as_array().unwrap();
    let labels: Vec<i64> = entries.iter().map(|e| e["label"].as_i64().unwrap()).collect();
    assert_eq!(labels, (-1..=4).collect::<Vec<_>>());
    let last = entries.last().unwrap();
    assert_eq!(last["kind"], "rho");
    assert!(last["value"]["coeffs"].as_array().unwrap().iter().all(|c| c == "0"));

    let v = json(&["coeffs", "--n", "2", "--m", "3", "--series", "C2", "--M", "2"]);
    let labels: Vec<i64> = v["result"]["entries"].as_array().unwrap().iter().map(|e| e["label"].as_i64().unwrap()).collect();
    assert_eq!(labels, [-1, 0, 1]);

    assert!(usage_error(&["coeffs", "--n", "1", "--m", "3", "--series", "C2", "--M", "1"]).contains("C2 requires Case 2"));
    assert!(usage_error(&["coeffs", "--n", "2", "--m", "3", "--series", "S1", "--M", "1"]).contains("requires Case 1"));
    usage_error(&["coeffs", "--n", "1", "--m", "3", "--series", "S1", "--M", "7"]);
    usage_error(&["coeffs", "--n", "1", "--m", "3", "--series", "S1", "--M", "1", "--range", "3..1"]);
    usage_error(&["coeffs", "--n", "1", "--m", "3", "--series", "S9", "--M", "1"]);
}

#[test]
fn exponents_examples() {
    for (n, m, deg, rs, gamma) in [("1", "3", 27, "5/6", "-1/5"), ("2", "3", 5, "2/3", "-1/2"), ("1", "2", 10, "3/4", "-1/3")] {
        let v = json(&["exponents", "--n", n, "--m", m]);
        let r = &v["result"];
        assert_eq!(r["disc_degree"], deg);
        assert_eq!(r["critical_exponent"], rs);
        assert_eq!(r["string_exponent"], gamma);
    }
}

#[test]
fn scan_examples() {
    let v = json(&["scan", "--max-m", "10", "--target", "2"]);
    let hits = v["result"]["hits"].as_array().unwrap();
    assert!(!hits.is_empty());
    for h in hits {
        assert_eq!(h["param"]["n"].as_u64().unwrap() % 2, 1, "p = 2 only in Case 1");
    }
    usage_error(&["scan", "--max-m", "0", "--target", "3"]);
    let table = ok(&["scan", "--max-m", "10", "--target", "3"]);
    assert!(table.lines().last().unwrap().starts_with("scanned 31 pairs"));
    assert!(stderr(&run(&["scan", "--max-m", "10", "--target", "3"])).contains("wall time"));
}

#[test]
fn scan_is_deterministic_across_jobs() {
    let args = ["scan", "--max-m", "40", "--target", "2", "--format", "json"];
    let one = run_with(&args, Some("1"));
    let four = run_with(&args, Some("4"));
    let flag: Vec<&str> = args.iter().copied().chain(["--jobs", "3"]).collect();
    let three = run(&flag);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, three.stdout);
}

#[test]
fn duality_examples() {
    let out = ok(&["duality", "words", "--length", "8", "--verify"]);
    assert_eq!(out.trim(), "PASS 6561 strings");
    assert!(usage_error(&["duality", "words", "--length", "20"]).contains("length cap is 12 for --verify"));
    assert!(usage_error(&["duality", "words", "--length", "13", "--verify"]).contains("length cap is 12 for --verify"));
    usage_error(&["duality", "words", "--length", "0"]);

    let v = json(&["duality", "beta", "--model", "ising", "--beta", "0.4406868"]);
    let r = &v["result"];
    assert!((r["beta_dual"].as_f64().unwrap() - 0.4406868).abs() < 1e-6);
    assert!(r["involution_residual"].as_f64().unwrap() < 1e-6);
    usage_error(&["duality", "beta", "--model", "ising", "--beta", "-1"]);
    usage_error(&["duality", "beta", "--model", "xy", "--beta", "1"]);
}

#[test]
fn json_round_trips_byte_identically() {
    for args in COMMANDS {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let text = ok(&full);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text, "{args:?}");
    }
}

#[test]
fn outputs_are_stable_and_clean() {
    for args in COMMANDS {
        for format in ["table", "csv", "json"] {
            let mut full = args.to_vec();
            full.extend(["--format", format]);
            let a = ok(&full);
            assert_eq!(a, ok(&full), "{full:?} not byte-stable");
            for line in a.lines() {
                assert_eq!(line, line.trim_end(), "{full:?}: trailing whitespace");
            }
        }
    }
}

#[test]
fn csv_rows_are_rectangular() {
    for args in COMMANDS {
        let mut full = args.to_vec();
        full.extend(["--format", "csv"]);
        let text = ok(&full);
        let mut rdr = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let width = rdr.headers().unwrap().len();
        for rec in rdr.records() {
            assert_eq!(rec.unwrap().len(), width, "{args:?}");
        }
    }
}

#[test]
fn exact_and_float_fields_agree() {
    let v = json(&["allowed-q", "--max-m", "12"]);
    for e in v["result"].as_array().unwrap() {
        let approx = e["q_approx"].as_f64().unwrap();
        let wire = e["q"]["approx_re"].as_f64().unwrap();
        assert!((approx - wire).abs() < 1e-10, "{e}");
    }
    let v = json(&["coeffs", "--n", "3", "--m", "8", "--series", "S2", "--M", "2"]);
    for e in v["result"]["entries"].as_array().unwrap() {
        assert_eq!(e["value"]["approx_im"], 0.0);
    }
}

#[test]
fn bad_flags_are_usage_errors() {
    usage_error(&["allowed-q"]);
    usage_error(&["allowed-q", "--max-m", "x"]);
    usage_error(&["frobnicate"]);
    usage_error(&["allowed-q", "--max-m", "3", "--format", "xml"]);
}
