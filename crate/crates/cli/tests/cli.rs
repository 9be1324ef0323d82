use std::process::{Command, Output};

use serde_json::Value;

fn dunklpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dunklpoly"))
        .args(args)
        .env_remove("DUNKLPOLY_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const CHIHARA: [&str; 8] = ["--family", "chihara", "--alpha", "1", "--beta", "1", "--gamma", "1/2"];

fn with<'a>(head: &[&'a str], tail: &[&'a str]) -> Vec<&'a str> {
    head.iter().chain(tail).copied().collect()
}

#[test]
fn coeffs_degree_two() {
    let o = dunklpoly(&with(&["coeffs"], &with(&CHIHARA, &["--n", "2"])));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "diag 1/2\nsub 1/10\n");
}

#[test]
fn poly_degree_two() {
    let o = dunklpoly(&with(&["poly"], &with(&CHIHARA, &["--n", "2"])));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "x^2 - 3/4");
}

#[test]
fn explicit_and_recurrence_agree() {
    for n in ["3", "6"] {
        let rec = dunklpoly(&with(&["poly"], &with(&CHIHARA, &["--n", n])));
        let exp = dunklpoly(&with(&["poly", "--explicit"], &with(&CHIHARA, &["--n", n])));
        assert_eq!(stdout(&rec), stdout(&exp));
    }
}

#[test]
fn negative_parameters_parse() {
    let o = dunklpoly(&[
        "coeffs", "--family", "chihara", "--alpha", "-1/3", "--beta", "3/4", "--gamma", "-2/5", "--n", "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

fn strip_millis(v: &mut Value) {
    for rec in v.as_array_mut().unwrap() {
        rec.as_object_mut().unwrap().remove("millis");
    }
}

#[test]
fn suite_all_passes_and_is_deterministic() {
    let a = dunklpoly(&["suite", "--all", "--json", "-"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let b = dunklpoly(&["suite", "--all", "--json", "-"]);
    let mut va: Value = serde_json::from_slice(&a.stdout).unwrap();
    let mut vb: Value = serde_json::from_slice(&b.stdout).unwrap();
    assert!(va.as_array().unwrap().len() > 100);
    strip_millis(&mut va);
    strip_millis(&mut vb);
    assert_eq!(va, vb);
    assert!(stderr(&a).contains("10/10 criteria passed"));
}

#[test]
fn csv_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pearson.csv");
    let o = dunklpoly(&["suite", "--criterion", "pearson", "--csv", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "suite,target,params,degrees,outcome,residual,tolerance,millis");
    assert_eq!(lines.count(), 15);
}

#[test]
fn flipped_limit_exits_one() {
    let o = dunklpoly(&["limits", "--case", "chihara_beta_to_inf", "--flip-gamma"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("verification failed"));
}

#[test]
fn limit_converges() {
    let o = dunklpoly(&["limits", "--case", "cbi_h_to_0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("converged true"));
}

#[test]
fn eigencheck_records() {
    let o = dunklpoly(&with(
        &["eigencheck", "--operator", "chihara_D", "--eps", "2/3", "--cap", "5", "--json", "-"],
        &CHIHARA[2..],
    ));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let recs = v.as_array().unwrap();
    assert_eq!(recs.len(), 6);
    assert!(recs.iter().all(|r| r["outcome"] == "exact_pass" && r["residual"] == "0"));
}

#[test]
fn weight_sample_csv() {
    let o = dunklpoly(&with(&["weight-sample", "--points", "10"], &CHIHARA));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("x,weight"));
    assert_eq!(text.lines().count(), 21);
    for line in text.lines().skip(1) {
        let w: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!(w >= 0.0 && w.is_finite());
    }
}

fn assert_usage(args: &[&str], flag: &str) {
    let o = dunklpoly(args);
    assert_eq!(o.status.code(), Some(2), "{args:?}");
    assert!(stderr(&o).contains(flag), "{args:?}: {}", stderr(&o));
}

#[test]
fn usage_errors_name_the_flag() {
    assert_usage(&["coeffs", "--family", "chihara", "--alpha", "1", "--beta", "1", "--n", "2"], "--gamma");
    assert_usage(&with(&["coeffs", "--mu", "1"], &with(&CHIHARA, &["--n", "2"])), "--mu");
    assert_usage(&["coeffs", "--family", "chihara", "--alpha", "x", "--beta", "1", "--gamma", "1", "--n", "2"], "--alpha");
    assert_usage(&["coeffs", "--family", "nope", "--n", "2"], "--family");
    assert_usage(&["suite", "--all", "--json", "a", "--csv", "b"], "--csv");
    assert_usage(&["suite", "--criterion", "eleven"], "--criterion");
    assert_usage(&["limits", "--case", "cbi_h_to_0", "--steps", "1e-3,1e-2,1e-4"], "--steps");
    assert_usage(&["eigencheck", "--operator", "nope"], "--operator");
}

#[test]
fn invalid_thread_count() {
    for bad in ["0", "-2", "many"] {
        let o = Command::new(env!("CARGO_BIN_EXE_dunklpoly"))
            .args(["suite", "--criterion", "1"])
            .env("DUNKLPOLY_THREADS", bad)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(2));
        assert!(String::from_utf8_lossy(&o.stderr).contains("DUNKLPOLY_THREADS"));
    }
    let o = Command::new(env!("CARGO_BIN_EXE_dunklpoly"))
        .args(["suite", "--criterion", "1"])
        .env("DUNKLPOLY_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
