use std::process::Command;

use conifold_cli::commands::{cmd_conjecture, cmd_metric, cmd_periods, Inputs};
use conifold_cli::verify::{run, run_criterion};
use conifold_cli::{Grid, Settings};
use conifold_hk::specfn::CorrectionConstant;
use conifold_hk::Complex64;

fn conifold(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_conifold"))
        .args(args)
        .env_remove(conifold_cli::CONFIG_ENV)
        .output()
        .expect("binary runs")
}

fn data_rows(csv: &str) -> Vec<&str> {
    // comment lines, then the header
    csv.lines().filter(|l| !l.starts_with('#')).skip(1).collect()
}

#[test]
fn single_point_periods() {
    let out = conifold(&["periods", "--t", "0.1+0.3i"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# conifold-hk schema 1\n# command: periods\n# settings: {"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 1);
    let cells: Vec<&str> = rows[0].split(',').collect();
    let pf: f64 = cells[12].parse().unwrap();
    assert!(pf < 1e-12);
    // 17 significant digits
    assert_eq!(cells[0], "1.0000000000000001e-1");
}

#[test]
fn grid_rows_are_ordered_and_stable() {
    let s = Settings::default();
    let t = Grid::parse("-0.4:0.4:10,0.05:0.5:10").unwrap().points();
    let inputs = Inputs { t: t.clone(), lambda: vec![], theta_beta_vee: 0.0, theta_beta: 0.0 };
    let a = cmd_periods(&s, &inputs).unwrap().table;
    let b = cmd_periods(&s, &inputs).unwrap().table;
    assert_eq!(a.rows.len(), 100);
    assert_eq!(a, b);
    assert_eq!(a.to_csv(&s), b.to_csv(&s));
    let (re, im) = (a.column("t_re").unwrap(), a.column("t_im").unwrap());
    for (row, t) in a.rows.iter().zip(&t) {
        assert_eq!(row[re], conifold_cli::table::Cell::Real(Some(t.re)));
        assert_eq!(row[im], conifold_cli::table::Cell::Real(Some(t.im)));
    }
}

#[test]
fn outside_the_strip_exits_with_two() {
    let out = conifold(&["periods", "--t", "0.6+0.1i"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("DomainError"));
    let out = conifold(&["periods", "--t", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn metric_spot_point_is_positive_definite() {
    let s = Settings::default();
    let inputs = Inputs { t: vec![Complex64::new(0.0, 0.05)], lambda: vec![], theta_beta_vee: 0.0, theta_beta: 0.0 };
    let o = cmd_metric(&s, &inputs).unwrap();
    let k = o.table.column("positive_definite").unwrap();
    assert_eq!(o.table.rows[0][k], conifold_cli::table::Cell::Bool(true));
    assert_eq!(o.exit_code(), 0);
}

#[test]
fn ov_compare_eta1_decreases() {
    let out = conifold(&["ov-compare", "--theta-beta", "0.7", "--theta-beta-vee", "0.3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let cols = v["columns"].as_array().unwrap();
    let k = cols.iter().position(|c| c["name"] == "eta1_max").unwrap();
    let eta1: Vec<f64> = v["rows"].as_array().unwrap().iter().map(|r| r[k].as_f64().unwrap()).collect();
    assert_eq!(eta1.len(), 4);
    assert!(eta1.windows(2).all(|w| w[1] < w[0]), "{eta1:?}");
}

#[test]
fn twistor_check_spot_point() {
    let out = conifold(&["twistor-check", "--t", "0.1+0.3i", "--theta-beta-vee", "0.2", "--theta-beta", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let cells: Vec<String> = data_rows(&text)[0].split(',').map(String::from).collect();
    assert!(cells[4].parse::<f64>().unwrap() < 1e-4);
}

#[test]
fn degenerate_rows_are_flagged_and_the_run_continues() {
    let out = conifold(&["conformal", "--t", "0.3+0.8i", "--lambda", "-1+0.2i", "--lambda", "0.5i"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 2);
    assert!(rows[0].ends_with(",ok"));
    assert!(rows[1].contains("OnRayError"));
}

#[test]
fn budget_exhaustion_exits_with_three() {
    let out = conifold(&["conjecture", "--t", "0.3+0.8i", "--lambda", "-100+20i", "--budget-max-terms", "5"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn settings_file_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("settings.json");
    std::fs::write(&path, r#"{"rh": {"correction_sign": -1.0}}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_conifold"))
        .args(["conjecture", "--t", "0.3+0.8i", "--lambda", "-1+0.2i"])
        .env(conifold_cli::CONFIG_ENV, &path)
        .output()
        .unwrap();
    // the mutated correction makes the residual fail
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"correction_sign\":-1.0"));
}

#[test]
fn conjecture_default_panel() {
    let s = Settings::default();
    let o = cmd_conjecture(&s, &[Complex64::new(0.3, 0.8)], None).unwrap();
    assert_eq!(o.table.rows.len(), 10);
    assert_eq!(o.exit_code(), 0);
}

#[test]
fn wrong_correction_sign_fails_the_conjecture_suite() {
    let mut s = Settings::default();
    s.rh.correction_sign = -1.0;
    let checks = run_criterion(9, &s);
    assert_eq!(checks.len(), 10);
    assert!(checks.iter().all(|c| !c.pass));
    // residuals are still recorded
    assert!(checks.iter().all(|c| c.measured.is_finite() && c.measured > 1e-3));
    let mut s = Settings::default();
    s.rh.constant = CorrectionConstant::Printed;
    assert!(run_criterion(9, &s).iter().all(|c| !c.pass));
}

#[test]
fn mutated_report_exits_with_one() {
    let mut s = Settings::default();
    s.rh.correction_sign = -1.0;
    let r = run(&s, &[9, 10]);
    assert_eq!(r.exit_code(), 1);
    let sm = r.summaries();
    assert_eq!(sm.len(), 2);
    assert_eq!(sm[0].failed, 10);
    assert_eq!(sm[1].failed, 0);
}

#[test]
fn report_is_byte_stable_and_seed_dependent() {
    let s = Settings::default();
    let a = run(&s, &[1, 7]);
    let b = run(&s, &[1, 7]);
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.to_json(), b.to_json());
    let mut other = s.clone();
    other.seed += 1;
    assert_ne!(run(&other, &[1]).to_csv(), a.to_csv());
}

#[test]
fn verify_all_lists_every_suite() {
    let out = conifold(&["verify-all", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let criteria = v["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 10);
    assert!(criteria.iter().all(|c| c["failed"] == 0));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c.get("measured").is_some() && c.get("tolerance").is_some()));
    let out = conifold(&["verify-all", "--only", "11"]);
    assert_eq!(out.status.code(), Some(2));
}
