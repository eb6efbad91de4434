use std::process::{Command, Output};

use serde_json::Value;

fn lerch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lerch")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| v.to_string().parse().unwrap())
}

fn eval_re(args: &[&str]) -> f64 {
    num(&json(&lerch(args))["value"]["re"])
}

#[test]
fn eval_examples() {
    let z2 = eval_re(&["eval", "--fn", "zeta", "--s", "2", "--a", "1", "--c", "1"]);
    assert!((z2 - 1.6449340668).abs() < 1e-10);
    let half = eval_re(&["eval", "--fn", "zeta", "--s", "2", "--a", "1/2", "--c", "1/2"]);
    assert!((half - 3.6638623767).abs() < 1e-10);
    let hz = eval_re(&["eval", "--fn", "hurwitz", "--s", "2", "--c", "1/2"]);
    assert!((hz - 4.9348022005).abs() < 1e-10);
}

#[test]
fn eval_reports_poles() {
    let v = json(&lerch(&["eval", "--fn", "zeta", "--s", "1", "--a", "0", "--c", "1/2"]));
    assert_eq!(num(&v["pole"]["location"]["re"]), 1.0);
    assert_eq!(num(&v["pole"]["residue"]["re"]), 1.0);
}

#[test]
fn integer_and_decimal_parameters_are_distinct() {
    // "1" selects the integer case, "1.0" is a real lying on an integer and is rejected
    assert!(lerch(&["eval", "--fn", "zeta", "--s", "2", "--a", "1", "--c", "1"]).status.success());
    assert_eq!(lerch(&["eval", "--fn", "zeta", "--s", "2", "--a", "1.0", "--c", "1"]).status.code(), Some(3));
}

#[test]
fn exit_codes() {
    assert_eq!(lerch(&["eval", "--fn", "zeta", "--s", "2x", "--a", "1", "--c", "1"]).status.code(), Some(2));
    assert_eq!(lerch(&["eval", "--fn", "nope", "--s", "2"]).status.code(), Some(2));
    assert_eq!(lerch(&["eval", "--fn", "lhat-n", "--s", "2", "--a", "1/3", "--c", "1/2"]).status.code(), Some(2));
    assert_eq!(lerch(&["eval", "--fn", "lhat-n", "--n", "2", "--s", "2", "--a", "0", "--c", "1/2"]).status.code(), Some(3));
    assert_eq!(lerch(&["eval", "--fn", "zeta", "--s", "2", "--a", "1", "--c", "1", "--prec", "32"]).status.code(), Some(2));
    let out = lerch(&["grid", "--fn", "zeta", "--s", "2", "--a-range", "1/4:3/4", "--c-range", "1/4:3/4", "--out", "/nonexistent/dir/grid.csv"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(lerch(&["poly", "--family", "r", "--n", "2"]).status.code(), Some(2));
    assert_eq!(lerch(&["fecheck", "--suite", "weil", "--samples", "3", "--tol", "1e-60"]).status.code(), Some(1));
}

#[test]
fn poly_table() {
    let out = lerch(&["poly", "--family", "p", "--n", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "8 -8 6\n");
    let out = lerch(&["poly", "--family", "q", "--n", "3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "64 -96 464 -216\n");
}

#[test]
fn zeros_lie_on_the_critical_line() {
    let v = json(&lerch(&["zeros", "--family", "p", "--n", "2"]));
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 2);
    for (r, sign) in roots.iter().zip([-1.0, 1.0]) {
        assert_eq!(num(&r["root"]["re"]), 0.5);
        assert!((num(&r["root"]["im"]) - sign * 0.7071067812).abs() < 1e-10);
    }
    let v = json(&lerch(&["zeros", "--family", "q", "--n", "4", "--prec", "128"]));
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 4);
    assert!(roots.iter().all(|r| num(&r["re_residual"]) < 1e-30));
}

#[test]
fn fecheck_suites_pass_and_are_deterministic() {
    let run = |suite: &str, n: &str| lerch(&["fecheck", "--suite", suite, "--samples", n, "--seed", "7"]);
    let first = run("weil", "50");
    let v = json(&first);
    assert_eq!(v["pass"], Value::Bool(true));
    assert!(num(&v["max"]) < 2f64.powi(-64));
    assert!(v["failures"].as_array().unwrap().is_empty());
    assert_eq!(first.stdout, run("weil", "50").stdout);
    for (suite, n) in [("transform", "20"), ("hermite", "10"), ("renorm", "10"), ("zeta-integral", "3")] {
        let v = json(&run(suite, n));
        assert_eq!(v["pass"], Value::Bool(true), "{suite}: {v}");
    }
}

#[test]
fn grid_csv_shape_and_order() {
    let out = lerch(&["grid", "--fn", "zeta", "--s", "2", "--a-range", "1/4:3/4", "--c-range", "1/4:3/4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.headers().unwrap(), vec!["a", "c", "re", "im", "err_bound"]);
    let rows: Vec<Vec<String>> = reader.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    let coords: Vec<(&str, &str)> = rows.iter().map(|r| (r[0].as_str(), r[1].as_str())).collect();
    assert_eq!(coords, [("1/4", "1/4"), ("3/4", "1/4"), ("1/4", "3/4"), ("3/4", "3/4")]);
}

#[test]
fn grid_jump_across_integer_c() {
    // ζ*(s, a, 1 + δ) - ζ*(s, a, 1 - δ) = e^{-2πia} δ^{-s} + O(δ)
    let out = lerch(&["grid", "--fn", "zeta", "--s", "2", "--a-range", "1/3:2/3", "--c-range", "999/1000:1001/1000", "--c-count", "2", "--format", "json"]);
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    let delta: f64 = 1e-3;
    for (j, a) in [1.0 / 3.0, 2.0 / 3.0].into_iter().enumerate() {
        let (lo, hi) = (&rows[j], &rows[j + 2]);
        let jr = (num(&hi["value"]["re"]) - num(&lo["value"]["re"])) * delta * delta;
        let ji = (num(&hi["value"]["im"]) - num(&lo["value"]["im"])) * delta * delta;
        let t = -2.0 * std::f64::consts::PI * a;
        assert!((jr - t.cos()).abs() < 1e-4 && (ji - t.sin()).abs() < 1e-4, "a = {a}: {jr} {ji}");
    }
}

#[test]
fn grid_json_round_trips_through_eval() {
    let out = lerch(&["grid", "--fn", "lhat-minus", "--s", "0.3+4i", "--a-range", "1/5:3/5", "--a-count", "3", "--c-range", "1/7:2/7", "--format", "json"]);
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for row in rows {
        let (a, c) = (row["a"].as_str().unwrap(), row["c"].as_str().unwrap());
        let single = json(&lerch(&["eval", "--fn", "lhat-minus", "--s", "0.3+4i", "--a", a, "--c", c]));
        assert_eq!(single["value"], row["value"], "({a}, {c})");
        assert_eq!(single["err_bound"], row["err_bound"]);
    }
}

#[test]
fn grid_writes_to_file() {
    let path = std::env::temp_dir().join(format!("lerch-grid-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let out = lerch(&["grid", "--fn", "renorm-plus", "--s", "0.5+1i", "--a-range", "0:1", "--a-count", "3", "--c-range", "0:1", "--out", p]);
    assert!(out.status.success() && out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 7);
    std::fs::remove_file(&path).unwrap();
}
