//! End-to-end runs of the `lagfock` binary.

use std::process::{Command, Output};

fn lagfock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lagfock")).args(args).output().expect("binary runs")
}

fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("suite,quantity,computed,target,provenance,tolerance,pass"));
    lines.map(split_csv_line).collect()
}

/// Splits one CSV line, honouring double-quoted fields.
fn split_csv_line(line: &str) -> Vec<String> {
    let mut fields = vec![String::new()];
    let mut quoted = false;
    for ch in line.chars() {
        match ch {
            '"' => quoted = !quoted,
            ',' if !quoted => fields.push(String::new()),
            c => fields.last_mut().unwrap().push(c),
        }
    }
    fields
}

#[test]
fn fock_suite_reports_the_half_pi_diagonal() {
    let out = lagfock(&["verify", "--suite", "fock", "--eps", "0.5", "--order", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&out);
    let row = rows.iter().find(|r| r[1] == "eps=0.5 order=0 diagonal n=0").expect("diagonal row");
    let v: f64 = row[2].parse().unwrap();
    assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-7);
    assert_eq!(row[4], "paper");
    assert!(rows.iter().all(|r| r[6] == "true"));
}

#[test]
fn hermite_inverse_root_is_not_rkhs() {
    let out = lagfock(&["classify", "--family", "hermite", "--seq", "power:-0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&out);
    let rkhs = rows.iter().find(|r| r[1].contains(" rkhs (")).expect("rkhs row");
    assert_eq!(rkhs[2].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn berezin_slope_table_fits_minus_two() {
    let out = lagfock(&["table", "--suite", "berezin-slopes", "--eps", "0.9,0.95,0.975", "--order-m", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let slopes: Vec<f64> = csv_rows(&out).iter().filter(|r| r[1].contains("fitted slope")).map(|r| r[2].parse().unwrap()).collect();
    assert!(!slopes.is_empty());
    assert!(slopes.iter().all(|s| (s + 2.0).abs() < 0.15), "{slopes:?}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lagfock(&["verify"]).status.code(), Some(2));
    assert_eq!(lagfock(&["verify", "--suite", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(lagfock(&["squeeze", "--eps", "1.5"]).status.code(), Some(2));
    assert_eq!(lagfock(&["squeeze", "--n", "1"]).status.code(), Some(2));
    assert_eq!(lagfock(&["squeeze", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(lagfock(&["kernel", "--family", "jacobi", "--x", "1", "--y", "1"]).status.code(), Some(2));
    assert_eq!(lagfock(&["classify", "--family", "hermite", "--seq", "bogus:1"]).status.code(), Some(2));
    assert_eq!(lagfock(&["squeeze", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("run{i}.json"))).collect();
    for p in &paths {
        let out = lagfock(&["kernel", "--family", "laguerre", "--x", "1+1i", "--y", "0.5-0.25i", "--eps", "0.3,0.7", "--format", "json", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
}

#[test]
fn csv_and_json_agree_on_row_count() {
    let args = ["berezin", "--symbol", "1:1,2:1:0.5", "-z", "1+1i", "--eps", "0.5,0.9"];
    let csv = lagfock(&args);
    let json = lagfock(&[&args[..], &["--format", "json"]].concat());
    assert_eq!(csv.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let objects = parsed.as_array().unwrap();
    assert_eq!(objects.len(), csv_rows(&csv).len());
    let keys: Vec<&str> = objects[0].as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["suite", "quantity", "computed", "target", "provenance", "tolerance", "pass"] {
        assert!(keys.contains(&k));
    }
}

#[test]
fn failing_rows_exit_one_with_the_full_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("squeeze.csv");
    // Column deviations sit near 1e-14, so a 1e-18 tolerance must fail some rows.
    let out = lagfock(&["squeeze", "--eps", "0.25", "--n", "40", "--tol", "1e-18", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<Vec<String>> = text.lines().skip(1).map(split_csv_line).collect();
    assert_eq!(rows.len(), 11 + 2);
    assert!(rows.iter().any(|r| r[6] == "false"));
}
