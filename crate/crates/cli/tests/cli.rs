// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

use lgcavity::linear::lg_closed_form_zero_t;
use lgcavity::ModelParams;

fn lgcavity(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lgcavity")).args(args).env_remove("RUST_LOG").output().expect("spawn")
}

fn lgcavity_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lgcavity")).args(args).env(key, value).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(|f| f.parse::<f64>().unwrap_or(f64::NAN)).collect())
        .collect()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn single_point_scan() {
    let o = lgcavity(&["scan", "--t-grid", "0", "0", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "T,lg_pp,lg_pm,lg_mp,lg_mm,exp_A0,exp_A1,corr_A0A1,v_re,v_im,terms_used");
    let r = rows(&text);
    assert_eq!(r.len(), 1);
    assert!((r[0][2] - 0.5).abs() < 1e-12);
    let o = lgcavity(&["scan", "--t-grid", "0:0:1", "--mode", "derived"]);
    assert!(rows(&stdout(&o))[0][2].abs() < 1e-12);
}

#[test]
fn default_scan_violates() {
    let o = lgcavity(&["scan"]);
    assert!(o.status.success());
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 801);
    assert!(r.iter().map(|x| x[2]).fold(f64::INFINITY, f64::min) < 0.0);
    // 17 significant digits
    let first = stdout(&o).lines().nth(2).unwrap().split(',').nth(1).unwrap().to_owned();
    assert_eq!(first.split('e').next().unwrap().replace(['-', '.'], "").len(), 17);
}

#[test]
fn linear_zero_temperature_scan_matches_closed_form() {
    let o = lgcavity(&["scan", "--model", "linear", "--beta", "inf", "--mode", "paper"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let params = ModelParams::real(1.0, 0.1, 0.075, f64::INFINITY).unwrap();
    for r in rows(&stdout(&o)) {
        assert!((r[2] - lg_closed_form_zero_t(&params, r[0])).abs() < 1e-9);
    }
}

#[test]
fn zero_temperature_minimum_near_pi() {
    let o = lgcavity(&["minima", "--model", "linear", "--beta-grid", "inf"]);
    assert!(o.status.success());
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 1);
    assert_eq!(r[0][0], 0.0);
    assert!((r[0][2] - PI).abs() < 0.1);
    assert!(r[0][3] < -0.17);
}

#[test]
fn no_violation_is_empty_success() {
    let o = lgcavity(&["minima", "--model", "linear", "--beta-grid", "1.5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "inv_beta,g,T_min,LG_min,refined\n");
}

#[test]
fn fit_recovers_synthetic_power_law() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("m.csv");
    let mut text = String::from("inv_beta,g,T_min,LG_min,refined\n");
    for i in 0..10 {
        let x = 0.1 + 0.1 * i as f64;
        // log(-LG_min) = 0.5 x^1.5 - 2
        let lg = -(0.5 * x.powf(1.5) - 2.0).exp();
        text.push_str(&format!("{x:.17e},0.1,{:.17e},{lg:.17e},true\n", 2.0 + x));
    }
    std::fs::write(&input, text).unwrap();
    let o = lgcavity(&["fit", "--input", path_str(&input), "--target", "lgmin"]);
    assert!(o.status.success());
    let j = json(&o);
    assert_eq!(j["converged"], true);
    assert_eq!(j["n_points"], 10);
    assert!((j["b"].as_f64().unwrap() - 1.5).abs() < 1e-8);
    assert!((j["a"].as_f64().unwrap() - 0.5).abs() < 1e-8);
    let keys: Vec<&String> = j.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 6);
    // identical input bytes, identical output
    assert_eq!(o.stdout, lgcavity(&["fit", "--input", path_str(&input)]).stdout);
}

#[test]
fn fit_needs_four_rows() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("m.csv");
    std::fs::write(&input, "inv_beta,g,T_min,LG_min,refined\n0.1,0.1,2,-0.1,true\n0.2,0.1,2,-0.1,true\n").unwrap();
    let o = lgcavity(&["fit", "--input", path_str(&input)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn minima_pipeline_round_trips_into_fit() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.csv");
    let o = lgcavity(&["minima", "--g", "0.52", "--out", path_str(&out)]);
    assert!(o.status.success());
    assert!(dir.path().join("m.csv.meta.json").exists());
    let o = lgcavity(&["fit", "--input", path_str(&out)]);
    assert!(o.status.success());
    assert_eq!(json(&o)["converged"], true);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |p: &Path| vec!["scan".to_owned(), "--beta".into(), "1.5".into(), "--out".into(), path_str(p).to_owned()];
    let aa: Vec<String> = args(&a);
    let bb: Vec<String> = args(&b);
    assert!(lgcavity_env(&aa.iter().map(String::as_str).collect::<Vec<_>>(), "LGCAVITY_THREADS", "1").status.success());
    assert!(lgcavity_env(&bb.iter().map(String::as_str).collect::<Vec<_>>(), "LGCAVITY_THREADS", "0").status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let meta = std::fs::read_to_string(dir.path().join("a.csv.meta.json")).unwrap();
    assert!(meta.contains("\"command\": \"scan\""));
    assert_eq!(meta, std::fs::read_to_string(dir.path().join("b.csv.meta.json")).unwrap());
    let o = lgcavity_env(&["scan", "--t-grid", "0:0:1"], "LGCAVITY_THREADS", "many");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"model": "linear", "beta": "inf", "t_grid": [0, 3.141592653589793, 3.141592653589793]}"#)
        .unwrap();
    let o = lgcavity(&["scan", "--config", path_str(&cfg)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 2);
    let params = ModelParams::real(1.0, 0.1, 0.075, f64::INFINITY).unwrap();
    assert!((r[1][2] - lg_closed_form_zero_t(&params, PI)).abs() < 1e-12);
    // flag beats file
    let o = lgcavity(&["scan", "--config", path_str(&cfg), "--g", "0"]);
    let r = rows(&stdout(&o));
    let free = ModelParams::real(1.0, 0.1, 0.0, f64::INFINITY).unwrap();
    assert!((r[1][2] - lg_closed_form_zero_t(&free, PI)).abs() < 1e-12);
    std::fs::write(&cfg, r#"{"modle": "linear"}"#).unwrap();
    let o = lgcavity(&["scan", "--config", path_str(&cfg)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn config_errors_exit_two() {
    for args in [
        vec!["scan", "--model", "linear", "--provider", "perturbative"],
        vec!["scan", "--beta", "abc"],
        vec!["scan", "--obs", "1,1,1"],
        vec!["scan", "--mode", "other"],
        vec!["scan", "--t-grid", "1:0:0.1"],
        vec!["bogus"],
    ] {
        assert_eq!(lgcavity(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn truncation_failure_exits_three() {
    let o = lgcavity(&["scan", "--provider", "oracle", "--oracle-dim", "8", "--beta", "1.5", "--t-grid", "0:1:1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn oracle_check_reports() {
    let o = lgcavity(&["oracle-check", "--model", "linear", "--beta", "4"]);
    assert!(o.status.success());
    let j = json(&o);
    assert!(j["max_vtrace_err"].as_f64().unwrap() < 1e-8);
    assert!(j["g6_ratio"].is_null());
    assert!(j["prob_norm_err"].as_f64().unwrap() < 1e-12);
    let o = lgcavity(&["oracle-check"]);
    let j = json(&o);
    let ratio = j["g6_ratio"].as_f64().unwrap();
    assert!((32.0..=128.0).contains(&ratio), "{ratio}");
    assert!(j["mode_discrepancy_max"].as_f64().unwrap() > 0.0);
}
