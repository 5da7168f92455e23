use std::process::{Command, Output};

use serde_json::Value;

fn trinoma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trinoma")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn classify_reports_membership() {
    let out = trinoma(&["--format", "json", "classify", "-s", "3", "-t", "2", "--p", "-6", "0", "--q", "1", "0"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["uj"], serde_json::json!([true, true, true, true, false, true]));
    assert_eq!(v["parity"], "odd");
    assert_eq!(v["ray"], 5);
}

#[test]
fn classify_rejects_svg_and_zero_constant() {
    let svg = trinoma(&["--format", "svg", "classify", "-s", "2", "-t", "1", "--p", "1", "0", "--q", "1", "0"]);
    assert_eq!(svg.status.code(), Some(2));
    let zero = trinoma(&["classify", "-s", "2", "-t", "1", "--p", "1", "0", "--q", "0", "0"]);
    assert_eq!(zero.status.code(), Some(3));
}

#[test]
fn count_agrees_with_the_oracle() {
    let out = trinoma(&["count", "-s", "2", "-t", "1", "--p", "1", "0", "--q", "1.4142135623730951", "0", "--v", "1", "--verify"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["count"], 1);
    assert_eq!(v["method"], "interval");
    assert_eq!(v["oracle_count"], 1);

    let lop = json(&trinoma(&["count", "-s", "3", "-t", "2", "--p", "6", "0", "--q", "1", "0", "--v", "1"]));
    assert_eq!(lop["count"], 2);
    assert_eq!(lop["method"], "lopsided");
}

#[test]
fn strict_count_fails_on_a_boundary() {
    let out = trinoma(&["count", "-s", "1", "-t", "1", "--p", "2", "0", "--q", "1", "0", "--v", "1", "--strict"]);
    assert_eq!(out.status.code(), Some(4));
    let relaxed = trinoma(&["count", "-s", "1", "-t", "1", "--p", "2", "0", "--q", "1", "0", "--v", "1"]);
    assert!(relaxed.status.success());
    assert_eq!(json(&relaxed)["boundary"], true);
}

#[test]
fn curve_emits_one_row_per_sample() {
    let out = trinoma(&["curve", "hypo", "-s", "5", "-t", "3", "--q", "0.5", "0", "--v", "1", "-n", "360"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("phi,re,im"));
    let first: Vec<f64> = lines.next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert!((first[1] - 1.5).abs() < 1e-12 && first[2].abs() < 1e-12);
    assert_eq!(text.lines().count(), 361);
}

#[test]
fn hypocycloid_singularities_are_listed() {
    let out = trinoma(&["curve", "hypo", "-s", "5", "-t", "2", "--q", "2.5", "0", "--v", "1", "-n", "8", "--singularities"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let kinds: Vec<&str> = text.lines().filter(|l| l.starts_with("#singularity")).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(kinds.iter().filter(|k| **k == "cusp").count(), 7);
    assert_eq!(kinds.iter().filter(|k| **k == "node").count(), 7);
}

#[test]
fn fan_lists_every_ray() {
    let out = trinoma(&["fan", "-s", "2", "-t", "1", "--arg-q", "0", "--length", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().nth(2).unwrap().starts_with("1,odd,"));
}

#[test]
fn knot_reports_winding_and_rejects_coarse_sampling() {
    let out = trinoma(&["knot", "-s", "2", "-t", "1", "-n", "256"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("around_p=2 around_q=3"));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 258);
    let coarse = trinoma(&["knot", "-s", "2", "-t", "1", "-n", "6"]);
    assert_eq!(coarse.status.code(), Some(5));
}

#[test]
fn verify_is_repeatable_and_catches_an_injected_fault() {
    let a = trinoma(&["verify", "--seed", "0", "--samples", "1"]);
    let b = trinoma(&["verify", "--seed", "0", "--samples", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let bad = trinoma(&["verify", "--seed", "0", "--samples", "64", "--degree-max", "6", "--inject-parity-flip"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["all_passed"], false);
}
