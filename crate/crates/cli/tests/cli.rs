use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclogon")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let out = run(&a);
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid json");
    (v, out.status.code().unwrap())
}

fn text(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

fn status(v: &Value) -> &str {
    v["items"][0]["result"]["verdict"]["status"].as_str().unwrap()
}

#[test]
fn pentagon_report() {
    let (v, code) = json(&["check-sides", "1", "2", "2", "2", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "cyclogon-report/1");
    assert_eq!(status(&v), "NonConstructible");
    let verdict = &v["items"][0]["result"]["verdict"];
    assert_eq!(verdict["degree"], 6);
    assert!(verdict["certificate"]["kind"].is_string());
}

#[test]
fn hexagon_pairs_names_the_cubic() {
    let t = text(&["check-sides", "3", "1", "2", "1", "3", "2"]);
    assert!(t.contains("NonConstructible"), "{}", t);
    assert!(t.contains("18*u^3 - 49*u^2 + 14*u - 1"), "{}", t);
}

#[test]
fn distance_instances() {
    let t = text(&["check-distances", "1", "2", "3"]);
    assert!(t.contains("3*u^3 + 7*u^2 - 2"), "{}", t);
    let (v, code) = json(&["check-distances", "499", "499", "500", "500", "501"]);
    assert_eq!((status(&v), code), ("NonConstructible", 0));
    let (v, _) = json(&["check-distances", "1000", "1000", "1000", "1000", "999", "1001"]);
    assert_eq!(status(&v), "NonConstructible");
    let (v, code) = json(&["check-distances", "1", "1", "1", "1"]);
    assert_eq!((status(&v), code), ("Constructible", 0));
    let approx = v["items"][0]["result"]["verdict"]["witness"]["approx"].as_f64().unwrap();
    assert!((approx - 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn square_and_two_length_hexagon() {
    assert_eq!(status(&json(&["check-sides", "1", "1", "1", "1"]).0), "Constructible");
    assert_eq!(status(&json(&["check-sides", "1", "2", "1", "2", "2", "2"]).0), "Constructible");
}

#[test]
fn wpoly_prints_the_octic() {
    let t = text(&["wpoly", "--k", "1", "--m", "4", "--a", "1", "--b", "2"]);
    assert!(t.contains("16384*x^8 - 8192*x^6 + 1280*x^4 - 63*x^2"), "{}", t);
}

#[test]
fn series_limit_is_zero() {
    let (v, code) = json(&["series", "--expr", "sqrt(1/x) - sqrt(1/(x+x^2))", "--order", "8"]);
    assert_eq!(code, 0);
    let r = &v["items"][0]["result"];
    assert_eq!(r["limit"], "0");
    assert_eq!(r["series"]["leading_exponent"], "1/2");
}

#[test]
fn right_triangle_radius() {
    let (v, code) = json(&["radius", "--sides", "3", "4", "5"]);
    assert_eq!(code, 0);
    let r = v["items"][0]["result"]["approx"].as_f64().unwrap();
    assert!((r - 2.5).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["check-sides", "1", "2", "3", "4", "5", "6", "7"]).status.code(), Some(2));
    assert_eq!(run(&["check-sides", "1", "1", "5"]).status.code(), Some(1));
    assert_eq!(run(&["check-sides", "1", "two", "2"]).status.code(), Some(1));
    assert_eq!(run(&["check-sides", "1", "0", "1"]).status.code(), Some(1));
    assert_eq!(run(&["reproduce", "--filter", "no-such-item"]).status.code(), Some(1));
}

#[test]
fn rational_literals_are_exact() {
    let (a, _) = json(&["check-sides", "0.5", "1", "1", "1", "1"]);
    let (b, _) = json(&["check-sides", "1/2", "1", "1", "1", "1"]);
    assert_eq!(a["items"][0]["result"], b["items"][0]["result"]);
}

fn strip_volatile(mut v: Value) -> Value {
    v["elapsed_ms"] = Value::Null;
    v["command"] = Value::Null;
    v
}

#[test]
fn deterministic_and_order_free() {
    let (a, _) = json(&["check-sides", "2", "1", "2", "2", "2"]);
    let (b, _) = json(&["check-sides", "2", "2", "2", "1", "2"]);
    assert_eq!(strip_volatile(a), strip_volatile(b));
    let x = run(&["--json", "reproduce", "--filter", "pentagon"]);
    let y = run(&["--json", "reproduce", "--filter", "pentagon"]);
    assert_eq!(x.status.code(), Some(0));
    let vx: Value = serde_json::from_slice(&x.stdout).unwrap();
    let vy: Value = serde_json::from_slice(&y.stdout).unwrap();
    assert_eq!(strip_volatile(vx), strip_volatile(vy));
}
