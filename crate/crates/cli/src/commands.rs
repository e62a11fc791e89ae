//! Subcommand bodies. Each returns a table plus what the exit status should
//! report; nothing here touches the filesystem or the process.
//!
//! Column order, per command:
//!
//! - `periods`: t, w0..w3, tau, pf_residual, monodromy_error, region
//! - `metric`: t, theta_beta_vee, theta_beta, n_total, g00..g33 (upper
//!   triangle), eig0..eig3, positive_definite, tail_bound, status
//! - `ov-compare`: k, t, eta1_max, eta2_dt_dtheta_beta, eta3_dt_dtbar_im, the
//!   two Richardson values, the two t = 0 limits, status
//! - `twistor-check`: t, theta_beta_vee, theta_beta, omega3_rel_error,
//!   holomorphic_rel_error, fit_residual, status
//! - `conformal`: t, lambda, log_x_inst, x, tail_bound, n_direct, lower_ray,
//!   upper_ray, status
//! - `conjecture`: t, lambda, arg_lambda, residual, tolerance, pass, status
//! - `qdilog`: t, omega1, omega2, h, log_h, swap_error, status

use std::f64::consts::{FRAC_PI_4, PI};

use conifold_hk::ask::{apply_monodromy, monodromy_matrix_z0, periods, periods_continued, pf_residual, region_classify, tau};
use conifold_hk::bps::bounding_rays;
use conifold_hk::conformal::{base_sector, conjecture_residual_with, log_x_inst_report, SectorContext};
use conifold_hk::forms::{Definiteness, DT, DT_BAR, D_THETA_BETA};
use conifold_hk::hk::{eta_limits, kahler_forms, metric_gn_report, smoothing_eta, FiberPoint};
use conifold_hk::specfn::{log_quantum_dilog_h, OmegaPair};
use conifold_hk::twistor::varpi_coefficients;
use conifold_hk::{Complex64, Error, Result};
use rayon::prelude::*;

use crate::settings::Settings;
use crate::table::{Row, Schema, Table};

/// Tolerance printed next to each conjecture residual.
pub const CONJECTURE_TOL: f64 = 1e-6;

/// Finite-difference step used by the Laurent fit of the twistor check.
pub const TWISTOR_FD_STEP: f64 = 1e-4;

/// A finished table with the conditions that decide the exit status.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub table: Table,
    /// Some row failed a verification threshold.
    pub failed: bool,
    /// Some row ran out of budget.
    pub budget_exhausted: bool,
}

impl Outcome {
    fn from_rows(table: Table, statuses: &[Option<Error>], failed: bool) -> Self {
        let budget_exhausted = statuses.iter().flatten().any(|e| matches!(e, Error::Budget(_)));
        Outcome { table, failed, budget_exhausted }
    }

    pub fn exit_code(&self) -> i32 {
        if self.budget_exhausted {
            3
        } else if self.failed {
            1
        } else {
            0
        }
    }
}

/// Shared point inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Inputs {
    pub t: Vec<Complex64>,
    pub lambda: Vec<Complex64>,
    pub theta_beta_vee: f64,
    pub theta_beta: f64,
}

fn status(e: &Option<Error>) -> String {
    match e {
        None => "ok".into(),
        Some(e) => format!("{}: {e}", e.kind()),
    }
}

pub fn cmd_periods(_s: &Settings, inputs: &Inputs) -> Result<Outcome> {
    let mut table = Schema::default()
        .complex("t", "1")
        .complex("w0", "1")
        .complex("w1", "1")
        .complex("w2", "1")
        .complex("w3", "1")
        .complex("tau", "1")
        .real("pf_residual", "1")
        .real("monodromy_error", "1")
        .text("region")
        .into_table("periods");
    let m = monodromy_matrix_z0();
    let rows: Vec<Result<Row>> = inputs
        .t
        .par_iter()
        .map(|&t| {
            let p = periods(t)?;
            let moved = periods_continued(t + 1.0)?.as_array();
            let mapped = apply_monodromy(&m, &p).as_array();
            let err = moved.iter().zip(&mapped).map(|(a, b)| (a - b).norm() / (1.0 + a.norm())).fold(0.0, f64::max);
            let mut row = Row::default().complex(t);
            for w in p.as_array() {
                row = row.complex(w);
            }
            Ok(row.complex(tau(t)?).real(pf_residual(t)?).real(err).text(format!("{:?}", region_classify(t))))
        })
        .collect();
    for r in rows {
        table.push(r?);
    }
    Ok(Outcome { table, failed: false, budget_exhausted: false })
}

pub fn cmd_metric(s: &Settings, inputs: &Inputs) -> Result<Outcome> {
    let mut schema = Schema::default()
        .complex("t", "1")
        .real("theta_beta_vee", "rad")
        .real("theta_beta", "rad")
        .real("n_total", "1");
    for i in 0..4 {
        for j in i..4 {
            schema = schema.real(&format!("g{i}{j}"), "1");
        }
    }
    for k in 0..4 {
        schema = schema.real(&format!("eig{k}"), "1");
    }
    let mut table = schema.real("positive_definite", "bool").real("tail_bound", "1").text("status").into_table("metric");
    let width = table.columns.len();
    let results: Vec<(Row, Option<Error>)> = inputs
        .t
        .par_iter()
        .map(|&t| {
            let p = FiberPoint::new(t, inputs.theta_beta_vee, inputs.theta_beta);
            let head = Row::default().complex(t).real(p.theta_beta_vee).real(p.theta_beta);
            match metric_gn_report(&p, &s.hk) {
                Ok(r) => {
                    let g = r.metric.as_rows();
                    let mut row = head.real(r.n_total);
                    for i in 0..4 {
                        for j in i..4 {
                            row = row.real(g[i][j]);
                        }
                    }
                    for e in r.metric.eigenvalues() {
                        row = row.real(e);
                    }
                    let pd = r.metric.definiteness() == Definiteness::Positive;
                    (row.flag(pd).real(r.tail_bound).text("ok"), None)
                }
                Err(e) => (head.missing(width - 5).text(status(&Some(e.clone()))), Some(e)),
            }
        })
        .collect();
    let statuses: Vec<Option<Error>> = results.iter().map(|r| r.1.clone()).collect();
    for (row, _) in results {
        table.push(row);
    }
    Ok(Outcome::from_rows(table, &statuses, false))
}

/// η coefficients along t_k = 10^{−k}e^{iπ/4}, k = 1..steps.
pub fn cmd_ov_compare(s: &Settings, inputs: &Inputs, steps: u32) -> Result<Outcome> {
    let mut table = Schema::default()
        .real("k", "1")
        .complex("t", "1")
        .real("eta1_max", "1")
        .real("eta2_dt_dtheta_beta", "1")
        .real("eta3_dt_dtbar_im", "1")
        .real("eta2_richardson", "1")
        .real("eta3_richardson", "1")
        .real("eta2_limit", "1")
        .real("eta3_limit", "1")
        .text("status")
        .into_table("ov-compare");
    let lim = eta_limits(inputs.theta_beta, 0.0, &s.hk)?;
    let results: Vec<(Complex64, Result<(f64, f64, f64)>)> = (1..=steps as i32)
        .into_par_iter()
        .map(|k| {
            let t = Complex64::from_polar(10f64.powi(-k), FRAC_PI_4);
            let e = smoothing_eta(&FiberPoint::new(t, inputs.theta_beta_vee, inputs.theta_beta), &s.hk)
                .map(|e| (e.eta1.max_norm(), e.eta2.coeff(DT, D_THETA_BETA).re, e.eta3.coeff(DT, DT_BAR).im));
            (t, e)
        })
        .collect();
    let mut statuses = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for (k, (t, r)) in results.into_iter().enumerate() {
        let row = Row::default().int(k as i64 + 1).complex(t);
        match r {
            Ok((e1, e2, e3)) => {
                // one Richardson step for the O(|t|) approach with ratio 10
                let rich = prev.map(|(p2, p3)| ((10.0 * e2 - p2) / 9.0, (10.0 * e3 - p3) / 9.0));
                let row = row.real(e1).real(e2).real(e3);
                let row = match rich {
                    Some((r2, r3)) => row.real(r2).real(r3),
                    None => row.missing(2),
                };
                table.push(row.real(lim.eta2_dt_dtheta_beta).real(lim.eta3_dt_dtbar.im).text("ok"));
                prev = Some((e2, e3));
                statuses.push(None);
            }
            Err(e) => {
                table.push(row.missing(7).text(status(&Some(e.clone()))));
                prev = None;
                statuses.push(Some(e));
            }
        }
    }
    Ok(Outcome::from_rows(table, &statuses, false))
}

pub fn cmd_twistor_check(s: &Settings, inputs: &Inputs) -> Result<Outcome> {
    let mut table = Schema::default()
        .complex("t", "1")
        .real("theta_beta_vee", "rad")
        .real("theta_beta", "rad")
        .real("omega3_rel_error", "1")
        .real("holomorphic_rel_error", "1")
        .real("fit_residual", "1")
        .text("status")
        .into_table("twistor-check");
    let results: Vec<(Row, Option<Error>)> = inputs
        .t
        .par_iter()
        .map(|&t| {
            let p = FiberPoint::new(t, inputs.theta_beta_vee, inputs.theta_beta);
            let head = Row::default().complex(t).real(p.theta_beta_vee).real(p.theta_beta);
            let r = varpi_coefficients(&p, &s.twistor, TWISTOR_FD_STEP)
                .and_then(|fit| kahler_forms(&p, &s.twistor.hk).map(|kf| (fit, kf)));
            match r {
                Ok((fit, kf)) => {
                    let e3 = fit.omega3.distance(&kf.omega3) / kf.omega3.max_norm();
                    let eh = fit.holomorphic.distance(&kf.holomorphic) / kf.holomorphic.max_norm();
                    (head.real(e3).real(eh).real(fit.residual).text("ok"), None)
                }
                Err(e) => (head.missing(3).text(status(&Some(e.clone()))), Some(e)),
            }
        })
        .collect();
    let statuses: Vec<Option<Error>> = results.iter().map(|r| r.1.clone()).collect();
    for (row, _) in results {
        table.push(row);
    }
    Ok(Outcome::from_rows(table, &statuses, false))
}

fn pairs(inputs: &Inputs) -> Vec<(Complex64, Complex64)> {
    inputs.t.iter().flat_map(|&t| inputs.lambda.iter().map(move |&l| (t, l))).collect()
}

pub fn cmd_conformal(s: &Settings, inputs: &Inputs) -> Result<Outcome> {
    let mut table = Schema::default()
        .complex("t", "1")
        .complex("lambda", "1")
        .complex("log_x_inst", "1")
        .complex("x", "1")
        .real("tail_bound", "1")
        .real("n_direct", "1")
        .text("lower_ray")
        .text("upper_ray")
        .text("status")
        .into_table("conformal");
    let results: Vec<(Row, Option<Error>)> = pairs(inputs)
        .par_iter()
        .map(|&(t, lambda)| {
            let head = Row::default().complex(t).complex(lambda);
            let r = (|| -> Result<_> {
                let ctx = SectorContext::new(t, lambda, &s.budget)?;
                let inst = log_x_inst_report(&ctx, &s.budget)?;
                let (lo, hi) = bounding_rays(t, lambda, conifold_hk::config::RAY_ANGLE_TOL)?;
                Ok((inst, lo, hi))
            })();
            match r {
                Ok((inst, lo, hi)) => {
                    let z = conifold_hk::bps::z_beta_vee(t, 0).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
                    let x = (inst.value + 2.0 * PI * Complex64::i() * z / lambda).exp();
                    let row = head
                        .complex(inst.value)
                        .complex(x)
                        .real(inst.tail_bound)
                        .int(inst.n_direct as i64)
                        .text(lo.to_string())
                        .text(hi.to_string())
                        .text("ok");
                    (row, None)
                }
                Err(e) => (head.missing(6).text("").text("").text(status(&Some(e.clone()))), Some(e)),
            }
        })
        .collect();
    let statuses: Vec<Option<Error>> = results.iter().map(|r| r.1.clone()).collect();
    for (row, _) in results {
        table.push(row);
    }
    Ok(Outcome::from_rows(table, &statuses, false))
}

/// Ten directions strictly inside the sector between l₀ and l₋₁, with moduli
/// spread over [0.55, 3.25].
pub fn base_sector_panel(t: Complex64) -> Vec<Complex64> {
    let (a0, a1) = base_sector(t);
    (1..=10)
        .map(|k| Complex64::from_polar(0.25 + 0.3 * k as f64, a0 + (a1 - a0) * k as f64 / 11.0))
        .collect()
}

/// `n` directions around the whole λ-plane at modulus `radius`.
pub fn sweep_panel(n: usize, radius: f64) -> Vec<Complex64> {
    (0..n).map(|k| Complex64::from_polar(radius, -PI + (k as f64 + 0.37) * 2.0 * PI / n as f64)).collect()
}

pub fn cmd_conjecture(s: &Settings, t: &[Complex64], lambdas: Option<&[Complex64]>) -> Result<Outcome> {
    let mut table = Schema::default()
        .complex("t", "1")
        .complex("lambda", "1")
        .real("arg_lambda", "rad")
        .real("residual", "1")
        .real("tolerance", "1")
        .real("pass", "bool")
        .text("status")
        .into_table("conjecture");
    let cases: Vec<(Complex64, Complex64)> = t
        .iter()
        .flat_map(|&t| match lambdas {
            Some(ls) => ls.iter().map(|&l| (t, l)).collect::<Vec<_>>(),
            None => base_sector_panel(t).into_iter().map(|l| (t, l)).collect(),
        })
        .collect();
    let results: Vec<(Row, Option<Error>, bool)> = cases
        .par_iter()
        .map(|&(t, lambda)| {
            let head = Row::default().complex(t).complex(lambda).real(lambda.arg());
            match conjecture_residual_with(t, lambda, &s.rh, &s.budget) {
                Ok(r) => {
                    let pass = r < CONJECTURE_TOL;
                    (head.real(r).real(CONJECTURE_TOL).flag(pass).text("ok"), None, pass)
                }
                Err(e) => (head.missing(1).real(CONJECTURE_TOL).flag(false).text(status(&Some(e.clone()))), Some(e), false),
            }
        })
        .collect();
    let failed = results.iter().any(|r| !r.2);
    let statuses: Vec<Option<Error>> = results.iter().map(|r| r.1.clone()).collect();
    for (row, _, _) in results {
        table.push(row);
    }
    Ok(Outcome::from_rows(table, &statuses, failed))
}

pub fn cmd_qdilog(s: &Settings, t: &[Complex64], omega1: Complex64, omega2: Complex64) -> Result<Outcome> {
    let mut table = Schema::default()
        .complex("t", "1")
        .complex("omega1", "1")
        .complex("omega2", "1")
        .complex("h", "1")
        .complex("log_h", "1")
        .real("swap_error", "1")
        .text("status")
        .into_table("qdilog");
    let om = OmegaPair::new(omega1, omega2)?;
    let results: Vec<(Row, Option<Error>)> = t
        .par_iter()
        .map(|&t| {
            let head = Row::default().complex(t).complex(omega1).complex(omega2);
            let r = log_quantum_dilog_h(t, om, &s.budget)
                .and_then(|a| log_quantum_dilog_h(t, om.swapped(), &s.budget).map(|b| (a, b)));
            match r {
                Ok((a, b)) => {
                    let h = a.exp();
                    let err = (h - b.exp()).norm() / h.norm().max(1.0);
                    (head.complex(h).complex(a).real(err).text("ok"), None)
                }
                Err(e) => (head.missing(5).text(status(&Some(e.clone()))), Some(e)),
            }
        })
        .collect();
    let statuses: Vec<Option<Error>> = results.iter().map(|r| r.1.clone()).collect();
    for (row, _) in results {
        table.push(row);
    }
    Ok(Outcome::from_rows(table, &statuses, false))
}
