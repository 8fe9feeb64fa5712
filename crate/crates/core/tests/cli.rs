//! The `odesign` binary end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/golden").join(name)
}

fn odesign(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_odesign"))
        .args(args)
        .env("OD_COLOR", "0")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn text_output_matches_golden() {
    let o = odesign(&["cod", "--n", "9", "--construction", "rh"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), std::fs::read_to_string(golden("rh9.txt")).unwrap());
}

#[test]
fn json_output_matches_golden() {
    let o = odesign(&["square", "--t", "16", "--format", "json"]);
    assert_eq!(o.stdout, std::fs::read(golden("r16.json")).unwrap());
}

#[test]
fn verify_golden() {
    let path = golden("tjc9.json");
    let o = odesign(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("[p, n, k] = [32, 9, 16] (tjc)"), "{out}");
    assert!(out.contains("ok (45 column pairs checked)"));

    let o = odesign(&["verify", path.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["failure"], serde_json::Value::Null);
}

#[test]
fn verify_rejects_mutation_with_exit_1() {
    let text = std::fs::read_to_string(golden("rh9.json")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let sign = doc["entries"][3]["sign"].as_i64().unwrap();
    doc["entries"][3]["sign"] = (-sign).into();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();

    let o = odesign(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED at gram cell"), "{}", stdout(&o));

    let o = odesign(&["verify", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ok"], false);
    assert!(!v["failure"]["residual"].as_array().unwrap().is_empty());
}

#[test]
fn malformed_documents_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(golden("rh9.json")).unwrap();

    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, &text[..text.len() / 3]).unwrap();
    let o = odesign(&["verify", truncated.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));

    let bad_sign = dir.path().join("sign.json");
    std::fs::write(&bad_sign, text.replacen("\"sign\": 1", "\"sign\": 2", 1)).unwrap();
    let o = odesign(&["verify", bad_sign.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("entries[0].sign"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(odesign(&["verify", "/nonexistent/design.json"]).status.code(), Some(2));
    assert_eq!(odesign(&["square", "--t", "16", "--bogus"]).status.code(), Some(2));
    assert_eq!(odesign(&["square", "--t", "12"]).status.code(), Some(2));
    assert_eq!(odesign(&["square", "--t", "16", "--family", "XY"]).status.code(), Some(2));
    assert_eq!(odesign(&["cod", "--n", "4", "--construction", "rh"]).status.code(), Some(2));
    assert_eq!(odesign(&["bound", "--n", "1"]).status.code(), Some(2));
    assert_eq!(odesign(&[]).status.code(), Some(2));
}

#[test]
fn help_and_version_exit_0() {
    let o = odesign(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("postmult"));
    let o = odesign(&["--version"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn hopf_and_bound() {
    assert_eq!(stdout(&odesign(&["hopf", "--n", "10", "--k", "10"])), "16\n");
    let o = odesign(&["hopf", "--n", "18", "--k", "14", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], 30);

    let b = stdout(&odesign(&["bound", "--n", "9"]));
    assert!(b.contains("C(10, 4) = 210"), "{b}");
    assert!(b.contains("maximal rate = 3/5"));
    assert!(b.contains("RH = 16, TJC = 32"));
    let o = odesign(&["bound", "--n", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["achievable_minimum"], "420");
}

#[test]
fn table_formats() {
    let csv = stdout(&odesign(&["table", "--from", "5", "--to", "16", "--format", "csv"]));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,delay_rh,delay_tjc,delay_maxrate,rate_half,rate_maxrate");
    assert_eq!(lines[9], "13,128,256,3003,1/2,4/7");
    assert_eq!(lines.len(), 13);
    let tex = stdout(&odesign(&["table", "--from", "5", "--to", "8", "--format", "latex"]));
    assert!(tex.contains("\\begin{tabular}"));
    assert_eq!(odesign(&["table", "--from", "9", "--to", "5"]).status.code(), Some(2));
}

#[test]
fn postmult_gives_zero_free_golden() {
    let o = odesign(&["postmult", golden("rh9.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(o.stdout, std::fs::read(golden("rh9_zero_free.json")).unwrap());
}

#[test]
fn design_renderings() {
    let o = odesign(&["rate1", "--n", "2", "--variant", "w", "--format", "csv"]);
    assert_eq!(stdout(&o), "x0,x1\nx1,-x0\n");
    let o = odesign(&["cod", "--n", "5", "--construction", "tjc", "--format", "latex"]);
    assert!(stdout(&o).contains("\\frac{x_{0}}{\\sqrt{2}}"));
    let o = odesign(&["square", "--t", "8", "--recursive", "--family", "alp-o"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn zero_free_only_for_rh() {
    let o = odesign(&["cod", "--n", "9", "--construction", "tjc", "--zero-free"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("rh only"));
}
