//! Ooguri–Vafa comparison near t = 0.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{a_inst_coeff, a_inst_form, assemble, checked_n, kahler_forms, lattice_cut, v_inst, FiberPoint, HkConfig, KahlerForms};
use crate::error::{Error, Result};
use crate::forms::{MetricMatrix, OneForm, TwoForm, DT, DT_BAR, D_THETA_BETA, D_THETA_BETA_VEE};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// The cutoff Λ = i/2π for which τ − τ^ov = O(t).
pub const OV_CUTOFF: Complex64 = Complex64 { re: 0.0, im: 1.0 / (2.0 * PI) };

/// τ^ov = (1/2πi)log(t/Λ).
pub fn ov_tau(t: Complex64, lambda: Complex64) -> Result<Complex64> {
    if t.norm() == 0.0 {
        return Err(Error::Singularity("τ^ov at t = 0".into()));
    }
    Ok((t / lambda).ln() / (2.0 * PI * I))
}

struct OvParts {
    n: f64,
    y: OneForm,
    a0: OneForm,
    v0: f64,
    tau: Complex64,
}

fn ov_parts(p: &FiberPoint, lambda: Complex64, cfg: &HkConfig, instantons: bool) -> Result<OvParts> {
    let tau = ov_tau(p.t, lambda)?;
    let (v0, a0) = if instantons && !cfg.semiflat {
        (v_inst(0, p, cfg)?.value, a_inst_form(0, p, a_inst_coeff(0, p, cfg)?.value))
    } else {
        (0.0, OneForm::default())
    };
    let y = OneForm::basis(D_THETA_BETA_VEE) - (tau + I * v0) * OneForm::basis(D_THETA_BETA) + 2.0 * PI * a0;
    Ok(OvParts { n: tau.im + v0, y, a0, v0, tau })
}

/// Ooguri–Vafa Kähler forms: ϖ^ov = (1/2π)dt∧Y^ov and
/// ω₃^ov = (i/2)(Im τ^ov + V₀)dt∧dt̄ − (1/4π²)dθ_β∨∧dθ_β + (1/2π)dθ_β∧A₀.
pub fn ov_forms(p: &FiberPoint, lambda: Complex64, cfg: &HkConfig) -> Result<KahlerForms> {
    ov_forms_with(p, lambda, cfg, true)
}

/// As `ov_forms`; `instantons = false` drops V₀ and A₀ (semi-flat OV forms).
pub fn ov_forms_with(p: &FiberPoint, lambda: Complex64, cfg: &HkConfig, instantons: bool) -> Result<KahlerForms> {
    let parts = ov_parts(p, lambda, cfg, instantons)?;
    let holomorphic = (1.0 / (2.0 * PI)) * OneForm::basis(DT).wedge(&parts.y);
    let mut omega3 = TwoForm::zero();
    omega3.add_term(DT, DT_BAR, Complex64::new(0.0, 0.5 * (parts.tau.im + parts.v0)));
    omega3.add_term(D_THETA_BETA_VEE, D_THETA_BETA, Complex64::new(-0.25 / (PI * PI), 0.0));
    omega3 = omega3 + (1.0 / (2.0 * PI)) * OneForm::basis(D_THETA_BETA).wedge(&parts.a0);
    Ok(KahlerForms::from_parts(holomorphic, omega3))
}

/// g^ov = N^ov|dt|² + (1/4π²)(N^ov)⁻¹|Y^ov|², N^ov = Im τ^ov + V₀.
pub fn ov_metric(p: &FiberPoint, lambda: Complex64, cfg: &HkConfig) -> Result<MetricMatrix> {
    let parts = ov_parts(p, lambda, cfg, true)?;
    Ok(assemble(checked_n(parts.n, cfg)?, &parts.y))
}

/// η_α = ω_α − ω_α^ov at Λ = i/2π. η₁ and η₂ are the real and imaginary
/// parts of ϖ − ϖ^ov taken coefficient by coefficient in {dt, dt̄, dθ_β∨, dθ_β}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eta {
    pub eta1: TwoForm,
    pub eta2: TwoForm,
    pub eta3: TwoForm,
}

pub fn smoothing_eta(p: &FiberPoint, cfg: &HkConfig) -> Result<Eta> {
    if p.t.norm() > cfg.ov_radius {
        return Err(Error::Domain(format!("|t| = {} exceeds the comparison radius {}", p.t.norm(), cfg.ov_radius)));
    }
    let full = kahler_forms(p, cfg)?;
    let ov = ov_forms(p, OV_CUTOFF, cfg)?;
    let eta = full.holomorphic - ov.holomorphic;
    Ok(Eta { eta1: eta.re(), eta2: eta.im(), eta3: full.omega3 - ov.omega3 })
}

/// Values of η at t = 0: the dt∧dθ_β coefficient of η₂ is −(1/2π)S and the
/// dt∧dt̄ coefficient of η₃ is (i/2)S, with S = Σ_{n≠0}V_n|_{t=0}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaLimits {
    pub v_sum: f64,
    pub eta2_dt_dtheta_beta: f64,
    pub eta3_dt_dtbar: Complex64,
}

pub fn eta_limits(theta_beta: f64, theta_delta: f64, cfg: &HkConfig) -> Result<EtaLimits> {
    let p = FiberPoint::new(Complex64::new(0.0, 0.0), 0.0, theta_beta).with_theta_delta(theta_delta);
    let n_max = lattice_cut(p.t, &cfg.instanton);
    let mut s = 0.0;
    for k in 1..=n_max {
        s += v_inst(k, &p, cfg)?.value + v_inst(-k, &p, cfg)?.value;
    }
    Ok(EtaLimits { v_sum: s, eta2_dt_dtheta_beta: -s / (2.0 * PI), eta3_dt_dtbar: Complex64::new(0.0, 0.5 * s) })
}
