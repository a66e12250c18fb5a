//! End-to-end tests of the binary: exit-code contract, report schema,
//! error messages, export round trips, determinism.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_qfk")
}

fn tmp(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("qfk-cli-tests");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn validate_preset_ok() {
    let p = tmp("min-z4.json", r#"{"preset": "min-z4"}"#);
    let out = run(&["validate", p.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("ok:"));
}

#[test]
fn validate_broken_pairing_names_indices() {
    let p = tmp(
        "broken.json",
        r#"{
            "field": {"backend": "prime", "p": 13},
            "group": {"moduli": [4]},
            "rank": 1,
            "f": [[1]], "g": [[1]], "chi": [[1]],
            "c": [1], "m": [4]
        }"#,
    );
    let out = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("chi_0(f_0) * chi_0(g_0)"), "{text}");
}

#[test]
fn validate_char_zero_prenichols_rejected() {
    let p = tmp(
        "char0.json",
        r#"{
            "field": {"backend": "cyclotomic", "M": 2},
            "group": {"moduli": [2]},
            "rank": 1,
            "f": [[1]], "g": [[1]], "chi": [[1]],
            "c": [1], "m": [6], "e": [1]
        }"#,
    );
    let out = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("pre-Nichols forbidden in characteristic 0"),
        "{text}"
    );
}

#[test]
fn parse_error_exit_code_two() {
    let p = tmp("notjson.json", "{ nope");
    let out = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simples_h_min_z4() {
    let p = tmp("min-z4-h.json", r#"{"preset": "min-z4"}"#);
    let out = run(&["simples", p.to_str().unwrap(), "--target", "h"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["dimensions"]["dim_h"], 16);
    assert_eq!(report["simples"]["count"], 4);
    let dims: Vec<u64> = report["simples"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["dim_simple"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 2, 1, 2]);
    assert_eq!(report["simples"]["all_certified"], true);
    assert_eq!(report["simples"]["distinguish_diagonal"], true);
    assert_eq!(report["axioms"]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn simples_double_with_oracle_over_f257() {
    let p = tmp(
        "min-z4-257.json",
        r#"{"preset": "min-z4", "field": {"backend": "prime", "p": 257}}"#,
    );
    let out = run(&[
        "simples",
        p.to_str().unwrap(),
        "--target",
        "double",
        "--oracle",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["simples"]["count"], 16);
    assert_eq!(report["oracle"]["status"], "pass");
    let dim = report["oracle"]["algebra_dim"].as_u64().unwrap();
    let rad = report["oracle"]["radical_dim"].as_u64().unwrap();
    let sum = report["oracle"]["sum_of_squares"].as_u64().unwrap();
    assert_eq!(dim - rad, sum);
}

#[test]
fn oracle_skipped_outside_window() {
    // F_13 has characteristic below dim H = 16
    let p = tmp("min-z4-skip.json", r#"{"preset": "min-z4"}"#);
    let out = run(&["simples", p.to_str().unwrap(), "--target", "h", "--oracle"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let status = report["oracle"]["status"].as_str().unwrap();
    assert!(status.starts_with("skipped (precondition)"), "{status}");
}

#[test]
fn frobenius_h_six_simples() {
    let p = tmp("frob.json", r#"{"preset": "frobenius-sl2-l3"}"#);
    let out = run(&["simples", p.to_str().unwrap(), "--target", "h"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["simples"]["count"], 6);
    let dims: Vec<u64> = report["simples"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["dim_simple"].as_u64().unwrap())
        .collect();
    assert!(dims.iter().all(|&d| (1..=3).contains(&d)));
    assert_eq!(dims, vec![1, 2, 3, 1, 2, 3]);
}

#[test]
fn prenichols_double_reports_higher_degree_generator() {
    let p = tmp("pn3.json", r#"{"preset": "prenichols-char3"}"#);
    let out = run(&["simples", p.to_str().unwrap(), "--target", "double"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["simples"]["count"], 4);
    let notes: Vec<&str> = report["notes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n.as_str().unwrap())
        .collect();
    assert!(
        notes.contains(&"R* requires a generator in degree > 1"),
        "{notes:?}"
    );
    for row in report["simples"]["rows"].as_array().unwrap() {
        assert_eq!(row["dim_induced"], 36);
    }
}

#[test]
fn export_prenichols_deterministic_and_reimportable() {
    let p = tmp("min-z4-exp.json", r#"{"preset": "min-z4"}"#);
    let dir = std::env::temp_dir().join("qfk-cli-tests");
    let out1 = dir.join("bundle1.json");
    let out2 = dir.join("bundle2.json");
    for out in [&out1, &out2] {
        let r = run(&[
            "export",
            p.to_str().unwrap(),
            "--what",
            "prenichols",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    }
    let b1 = fs::read(&out1).unwrap();
    let b2 = fs::read(&out2).unwrap();
    assert_eq!(b1, b2, "export must be byte-identical across runs");
    // and the bundle re-imports to identical tables
    let file: qfk_core::files::PreNicholsFile = serde_json::from_slice(&b1).unwrap();
    let d = file.datum.to_datum().unwrap();
    let left = file.left.to_bundle(&d.field, &d.group).unwrap();
    let imported =
        qfk_core::prenichols::import_prenichols(left.clone(), &d.field, &d.group).unwrap();
    assert_eq!(
        imported
            .to_bundle(qfk_core::prenichols::Side::Left)
            .products,
        left.products
    );
}

#[test]
fn export_h_structure_constants() {
    let p = tmp("min-z4-exph.json", r#"{"preset": "min-z4"}"#);
    let dir = std::env::temp_dir().join("qfk-cli-tests");
    let out = dir.join("h-sc.json");
    let r = run(&[
        "export",
        p.to_str().unwrap(),
        "--what",
        "h",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success());
    let file: serde_json::Value = serde_json::from_slice(&fs::read(&out).unwrap()).unwrap();
    assert_eq!(file["dim"], 16);
    // sparse: far fewer nonzero products than 16^2 entries x 16 terms
    let entries = file["entries"].as_array().unwrap();
    assert!(!entries.is_empty() && entries.len() <= 256);
}

#[test]
fn export_double_straightening_table() {
    // the double export materializes exactly the straightening pairs
    let p = tmp("min-z4-expd.json", r#"{"preset": "min-z4"}"#);
    let dir = std::env::temp_dir().join("qfk-cli-tests");
    let out = dir.join("double-sc.json");
    let r = run(&[
        "export",
        p.to_str().unwrap(),
        "--what",
        "double",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let file: serde_json::Value = serde_json::from_slice(&fs::read(&out).unwrap()).unwrap();
    assert_eq!(file["what"], "double-straightening");
    assert_eq!(file["dim"], 256);
    let entries = file["entries"].as_array().unwrap();
    // one entry per nonzero (h, dual) pair, at most 16 x 16
    assert!(!entries.is_empty() && entries.len() <= 256);
}

#[test]
fn reports_are_deterministic_modulo_timings() {
    let p = tmp("det.json", r#"{"preset": "min-z4"}"#);
    let mut texts = vec![];
    for _ in 0..2 {
        let out = run(&[
            "simples",
            p.to_str().unwrap(),
            "--target",
            "h",
            "--seed",
            "5",
        ]);
        assert!(out.status.success());
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timings");
        texts.push(serde_json::to_string(&v).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
}

#[test]
fn threads_flag_accepted() {
    let p = tmp("thr.json", r#"{"preset": "min-z4"}"#);
    let out = Command::new(bin())
        .args([
            "simples",
            p.to_str().unwrap(),
            "--target",
            "h",
            "--threads",
            "2",
        ])
        .env("QFK_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
}
