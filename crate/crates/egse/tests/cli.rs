use std::process::{Command, Output};

use serde_json::Value;

fn egse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_egse")).args(args).output().expect("spawn egse")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn analytic_json(args: &[&str]) -> Value {
    let mut full = vec!["analytic"];
    full.extend_from_slice(args);
    let o = egse(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn analytic_means() {
    let b = analytic_json(&["--algo", "b", "--n", "10000", "--m", "100", "--epsilon", "0.1"]);
    assert_eq!(b["mean"].as_f64(), Some(496.0));
    assert_eq!(b["support_max"].as_u64(), Some(991));
    assert_eq!(b["exact_vs_closed_form"]["recurrence_verified"], Value::Bool(true));
    let a = analytic_json(&["--algo", "a", "--n", "10000", "--m", "100", "--epsilon", "0.1"]);
    assert_eq!(a["mean"].as_f64(), Some(991.0));
    assert_eq!(a["alpha_exact"].as_str(), Some("1/991"));
    assert!(a["support_max"].is_null());
}

#[test]
fn analytic_within() {
    let v = analytic_json(&["--algo", "b", "--n", "10", "--m", "4", "--epsilon", "0.5", "--within", "2"]);
    assert_eq!(v["within_t"]["probability"].as_f64(), Some(0.5));
    assert_eq!(v["variance"].as_f64(), Some(1.25));
}

#[test]
fn analytic_flags_non_divisible_closed_form() {
    let v = analytic_json(&["--algo", "b", "--epsilon", "0.13"]);
    assert_eq!(v["exact_vs_closed_form"]["closed_form_exact"], Value::Bool(false));
    assert_eq!(v["closed_form"]["mean"].as_f64(), Some(381.769));
}

#[test]
fn simulate_csv_shape() {
    let o = egse(&["simulate", "--algo", "b", "--trials", "50", "--seed", "9"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("trial,discovery_time,running_mean,analytic_mean,rel_error"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 50);
    assert!(rows.iter().all(|r| r.len() == 5));
    assert!(rows.iter().all(|r| r[3] == "496.000"));
}

#[test]
fn simulate_single_trial_running_mean() {
    let o = egse(&["simulate", "--algo", "a", "--trials", "1", "--seed", "4"]);
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let k: f64 = row[1].parse().unwrap();
    let mean: f64 = row[2].parse().unwrap();
    assert_eq!(k, mean);
}

#[test]
fn simulate_is_byte_identical() {
    let args = ["simulate", "--algo", "a", "--n", "2000", "--m", "40", "--trials", "300", "--seed", "3", "--summary", "true"];
    assert_eq!(egse(&args).stdout, egse(&args).stdout);
}

#[test]
fn simulate_summary_line() {
    let o = egse(&["simulate", "--trials", "20", "--max-steps", "750", "--summary", "true"]);
    let text = stdout(&o);
    let summary: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(summary["trials"].as_u64(), Some(20));
    assert_eq!(summary["max_steps"].as_u64(), Some(750));
    assert!((summary["analytic_within"].as_f64().unwrap() - 0.756811).abs() < 1e-9);
}

#[test]
fn evolve_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.csv");
    let o = egse(&["evolve", "--algo", "b", "--seed", "5", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("query,precision,clicks,discovered"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert!(rows.len() <= 191);
    assert_eq!(rows.last().unwrap()[3], "1");
    assert!(rows.iter().all(|r| (0.0..=1.0).contains(&r[1].parse::<f64>().unwrap())));
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains(&format!("discovered at query {}", rows.len())));

    for name in ["run_riv_initial.csv", "run_riv_discovery.csv"] {
        let hist = std::fs::read_to_string(dir.path().join(name)).unwrap();
        let mut lines = hist.lines();
        assert_eq!(lines.next(), Some("label,count,mean,p10,p20,p30,p40,p50,p60,p70,p80,p90"));
        assert_eq!(lines.count(), 4);
    }
    let hist = std::fs::read_to_string(dir.path().join("run_riv_discovery.csv")).unwrap();
    let means: Vec<(String, f64)> = hist
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].to_string(), f[2].parse().unwrap())
        })
        .collect();
    let best = means.iter().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    assert_eq!(best.0, "grand piano");
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.toml");
    std::fs::write(&cfg, "algo = \"b\"\nn = 10\nm = 4\nepsilon = 0.5\nwithin = 3\n").unwrap();
    let v = analytic_json(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(v["within_t"]["probability"].as_f64(), Some(0.75));
    let v = analytic_json(&["--config", cfg.to_str().unwrap(), "--within", "1"]);
    assert_eq!(v["within_t"]["probability"].as_f64(), Some(0.25));
}

#[test]
fn exit_codes() {
    assert_eq!(egse(&["analytic", "--epsilon", "1.5"]).status.code(), Some(2));
    assert_eq!(egse(&["simulate", "--n", "50", "--m", "50"]).status.code(), Some(2));
    assert_eq!(egse(&["analytic", "--algo", "c"]).status.code(), Some(2));
    assert_eq!(egse(&["analytic", "--config", "/nonexistent/cfg.toml"]).status.code(), Some(2));
    assert_eq!(egse(&["simulate", "--trials", "2", "--out", "/nonexistent/dir/out.csv"]).status.code(), Some(1));
    assert_eq!(egse(&["analytic"]).status.code(), Some(0));
}
