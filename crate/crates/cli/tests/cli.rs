use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn cubic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn expand_examples() {
    let o = cubic(&["expand", "a", "--order", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1, 6, 0, 6, 6, 0"), "{}", stdout(&o));

    let o = cubic(&["expand", "c", "--order", "2"]);
    assert!(stdout(&o).starts_with("c = 3*q^(1/3) + "), "{}", stdout(&o));

    let o = cubic(&["expand", "3 * q^(2/12) * prod[(1,1,1)]", "--order", "2", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["offset"], "1/6");
    assert_eq!(v["coefficients"], serde_json::json!(["3", "-3"]));
}

#[test]
fn expand_errors_are_usage_errors() {
    let o = cubic(&["expand", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nosuch"));
    assert_eq!(cubic(&["expand", "prod[(1,1"]).status.code(), Some(2));
    assert_eq!(cubic(&["expand", "a", "--order", "0"]).status.code(), Some(2));
    assert_eq!(cubic(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_single_and_all() {
    let o = cubic(&["verify", "garvan"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("garvan"));

    let v = json(&cubic(&["verify", "fjl-1", "--format", "json"]));
    assert_eq!(v["status"], "pass");
    assert_eq!(v["order"], 200);

    let o = cubic(&["verify", "all", "--order", "30", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let all = json(&o);
    let records = all.as_array().unwrap();
    assert!(records.len() >= 20);
    assert!(records.iter().all(|r| r["status"] == "pass"));

    assert_eq!(cubic(&["verify", "no-such-id"]).status.code(), Some(2));
}

#[test]
fn failing_manifest_exits_one_with_witness() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# two entries\nok | a | a(q^3) + 2*c(q^3) | 20 | fine\nbad | a | b | 20 | wrong").unwrap();
    let path = f.path().to_str().unwrap();
    let o = cubic(&["verify", "all", "--registry", path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v[0]["status"], "pass");
    assert_eq!(v[1]["status"], "fail");
    let m = &v[1]["first_mismatch"];
    assert_eq!((m["q_exponent"].as_str(), m["lhs"].as_str(), m["rhs"].as_str()), (Some("1"), Some("6"), Some("-3")));

    let o = cubic(&["verify", "all", "--registry", "/nonexistent/manifest.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn matrices_and_eigen() {
    let o = cubic(&["matrix", "C", "2"]);
    assert_eq!(stdout(&o), "1 0 0\n160 171 162\n64 72 81\n");

    let v = json(&cubic(&["matrix", "Btri", "2", "--format", "json"]));
    assert_eq!(v["matrix"]["entries"][0], serde_json::json!(["4", "-2", "1"]));

    let out = stdout(&cubic(&["eigen", "C", "2"]));
    for line in ["(243, (0, 9, 4))", "(9, (0, 1, -1))", "(1, (121, -152, 40))"] {
        assert!(out.contains(line), "{out}");
    }
    assert_eq!(cubic(&["eigen", "B", "2"]).status.code(), Some(2));
    assert_eq!(cubic(&["matrix", "C", "0"]).status.code(), Some(2));
}

#[test]
fn determinant_scans() {
    let v = json(&cubic(&["detscan", "Btri", "5", "--format", "json"]));
    let w: Vec<u64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["power_of_three"].as_u64().unwrap())
        .collect();
    assert_eq!(w, vec![1, 3, 6, 10, 15]);

    let o = cubic(&["detscan", "C", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("3^16"));
}

#[test]
fn congruence_suites() {
    let o = cubic(&["congruence", "th1", "--ells", "1,3", "--k-max", "60"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("holds"));
    assert_eq!(cubic(&["congruence", "th1", "--ells", "2"]).status.code(), Some(2));

    let v = json(&cubic(&["congruence", "eq31", "--ell-max", "1", "--n-max", "20", "--format", "json"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["rows"][0]["u"]["claim"]["modulus"], "243");
}

#[test]
fn recursion_report_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rec.json");
    let o = cubic(&[
        "recursion-report",
        "--n-max",
        "2",
        "--orders",
        "20,30",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["checks"].as_array().unwrap().len() == 2));
    let d2 = rows.iter().find(|r| r["display"] == 2).unwrap();
    assert_eq!(d2["checks"][0]["holds"], false);
    assert!(d2["checks"][0]["first_mismatch"]["q_exponent"].is_string());
}
