//! Semi-flat and instanton-corrected hyperkähler data of the resolved conifold.
//!
//! The instanton sums are available in two forms. The n-indexed closed forms
//! (`v_inst`, `a_inst_coeff`, `w_coeffs`) combine ±β + nδ analytically; the
//! per-charge forms (`charge_terms`) sum over the BPS support with weights
//! Ω(γ)⟨β∨, γ⟩ and are what the metric is assembled from.

mod ov;

pub use ov::{eta_limits, ov_forms, ov_forms_with, ov_metric, ov_tau, smoothing_eta, Eta, EtaLimits, OV_CUTOFF};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ask::{im_tau, im_tau_raw, tau, tau_raw};
use crate::bps::{in_strip, omega, pairing, support, Charge};
use crate::config::{Budget, InstantonParams};
use crate::error::{Error, Result};
use crate::forms::{MetricMatrix, OneForm, TwoForm, DT, DT_BAR, D_THETA_BETA, D_THETA_BETA_VEE};
use crate::specfn::bessel::{bessel_k01_scaled, bessel_k_bound};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const FOUR_PI_SQ: f64 = 4.0 * PI * PI;
/// Series whose total bound is below this are returned as 0.
const NEGLIGIBLE: f64 = 1e-90;

/// A point of the torus fibration: base coordinate t and fiber angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiberPoint {
    pub t: Complex64,
    pub theta_beta_vee: f64,
    pub theta_beta: f64,
    #[serde(default)]
    pub theta_delta: f64,
}

impl FiberPoint {
    pub fn new(t: Complex64, theta_beta_vee: f64, theta_beta: f64) -> Self {
        FiberPoint { t, theta_beta_vee, theta_beta, theta_delta: 0.0 }
    }

    /// θ_β = θ_β∨ = θ_δ = 0.
    pub fn on_lagrangian(t: Complex64) -> Self {
        FiberPoint::new(t, 0.0, 0.0)
    }

    pub fn with_theta_delta(mut self, theta_delta: f64) -> Self {
        self.theta_delta = theta_delta;
        self
    }

    /// θ_γ, linear in γ.
    pub fn theta(&self, g: Charge) -> f64 {
        g.n_beta_vee as f64 * self.theta_beta_vee + g.n_beta as f64 * self.theta_beta + g.n_delta as f64 * self.theta_delta
    }
}

/// Which part of supp Ω the per-charge sums run over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Spectrum {
    /// ±β + nδ only.
    #[default]
    Conifold,
    /// ±β + nδ and kδ.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HkConfig {
    pub instanton: InstantonParams,
    pub budget: Budget,
    pub spectrum: Spectrum,
    /// Largest |t| accepted by the Ooguri–Vafa comparison.
    pub ov_radius: f64,
    /// Drops every instanton term (semi-flat limit).
    pub semiflat: bool,
}

impl Default for HkConfig {
    fn default() -> Self {
        HkConfig {
            instanton: InstantonParams::default(),
            budget: Budget::default(),
            spectrum: Spectrum::default(),
            ov_radius: 0.25,
            semiflat: false,
        }
    }
}

impl HkConfig {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cuts(mut self, n_max: i64, m_max: usize) -> Self {
        self.instanton.n_max = Some(n_max);
        self.instanton.m_max = Some(m_max);
        self
    }

    pub fn with_spectrum(mut self, spectrum: Spectrum) -> Self {
        self.spectrum = spectrum;
        self
    }

    pub fn semiflat_only(mut self) -> Self {
        self.semiflat = true;
        self
    }
}

/// A truncated sum with a bound on everything it dropped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate<T> {
    pub value: T,
    pub tail_bound: f64,
    pub terms: usize,
}

/// Σ_{m>0} e^{imθ}K₀(m x) and Σ_{m>0} e^{imθ}K₁(m x), x = 2πR|Z|.
#[derive(Debug, Clone, Copy)]
struct FourierBessel {
    k0: Complex64,
    k1: Complex64,
    tail: f64,
    terms: usize,
}

fn fourier_bessel(abs_z: f64, theta: f64, params: &InstantonParams, budget: &Budget) -> Result<FourierBessel> {
    let x1 = 2.0 * PI * params.scale_r * abs_z;
    let ratio = 1.0 / (1.0 - (-x1).exp());
    let whole = bessel_k_bound(x1) * ratio;
    if whole < NEGLIGIBLE {
        return Ok(FourierBessel { k0: ZERO, k1: ZERO, tail: whole, terms: 0 });
    }
    let (mut k0, mut k1) = (ZERO, ZERO);
    let mut m = 0usize;
    loop {
        m += 1;
        let x = m as f64 * x1;
        let (s0, s1) = bessel_k01_scaled(x)?;
        let e = (-x).exp();
        let (sn, cs) = (m as f64 * theta).sin_cos();
        let phase = Complex64::new(cs, sn);
        k0 += phase * (s0 * e);
        k1 += phase * (s1 * e);
        let tail = bessel_k_bound(x + x1) * ratio;
        let scale = k0.norm().max(k1.norm()).max(1.0);
        if let Some(cap) = params.m_max {
            if m >= cap {
                return Ok(FourierBessel { k0, k1, tail, terms: m });
            }
        } else if tail <= budget.series_tol * scale {
            return Ok(FourierBessel { k0, k1, tail, terms: m });
        }
        if m >= budget.max_terms {
            return Err(Error::Budget(format!("Bessel series at |Z| = {abs_z} needs more than {m} terms")));
        }
    }
}

fn check_base(t: Complex64) -> Result<()> {
    if !in_strip(t) {
        return Err(Error::Domain(format!("|Re t| ≥ 1/2 at t = {t}")));
    }
    if t.norm() == 0.0 {
        return Err(Error::Singularity("t = 0".into()));
    }
    Ok(())
}

/// V_n = (1/π)Σ_{m>0} cos(mθ_{β−nδ})K₀(2πRm|t − n|).
pub fn v_inst(n: i64, p: &FiberPoint, cfg: &HkConfig) -> Result<Estimate<f64>> {
    let d = (p.t - n as f64).norm();
    if d == 0.0 {
        return Err(Error::Singularity(format!("t = {n}")));
    }
    let fb = fourier_bessel(d, p.theta(Charge::hyper(1, -n)), &cfg.instanton, &cfg.budget)?;
    Ok(Estimate { value: fb.k0.re / PI, tail_bound: fb.tail / PI, terms: fb.terms })
}

/// c_n = −(1/4π)Σ_{m≠0} sign(m)e^{imθ}R|t − n|K₁(2πR|m||t − n|), so that
/// A_n = c_n(dt/(t − n) − dt̄/(t̄ − n)).
pub fn a_inst_coeff(n: i64, p: &FiberPoint, cfg: &HkConfig) -> Result<Estimate<Complex64>> {
    let d = (p.t - n as f64).norm();
    if d == 0.0 {
        return Err(Error::Singularity(format!("t = {n}")));
    }
    let rd = cfg.instanton.scale_r * d;
    let fb = fourier_bessel(d, p.theta(Charge::hyper(1, -n)), &cfg.instanton, &cfg.budget)?;
    Ok(Estimate { value: -I * rd * fb.k1.im / (2.0 * PI), tail_bound: rd * fb.tail / (2.0 * PI), terms: fb.terms })
}

/// A_n as a 1-form.
pub fn a_inst_form(n: i64, p: &FiberPoint, c_n: Complex64) -> OneForm {
    let w = p.t - n as f64;
    OneForm::new(c_n / w, -c_n / w.conj(), ZERO, ZERO)
}

/// Lattice cut: explicit, or the smallest N with 2πR(N − |t| − 1) > 46.
pub fn lattice_cut(t: Complex64, params: &InstantonParams) -> i64 {
    params
        .n_max
        .unwrap_or_else(|| (t.norm() + 1.0 + 46.0 / (2.0 * PI * params.scale_r)).ceil() as i64)
}

/// Bound on Σ_{|n|>N} of |V_n| and of 2π|c_n/(t − n)|.
pub fn lattice_tail_bound(t: Complex64, n_max: i64, params: &InstantonParams) -> f64 {
    let r = params.scale_r;
    let d = (n_max + 1) as f64 - t.norm();
    if d <= 0.0 {
        return f64::INFINITY;
    }
    let x = 2.0 * PI * r * d;
    let per_n = r.max(1.0) * bessel_k_bound(x) / (1.0 - (-x).exp());
    2.0 * per_n / (1.0 - (-2.0 * PI * r).exp())
}

/// The n-indexed instanton data V_n, c_n for |n| ≤ N.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeSums {
    pub n_max: i64,
    pub v: Vec<(i64, f64)>,
    pub c: Vec<(i64, Complex64)>,
    pub tail_bound: f64,
}

pub fn lattice_sums(p: &FiberPoint, cfg: &HkConfig) -> Result<LatticeSums> {
    check_base(p.t)?;
    let n_max = lattice_cut(p.t, &cfg.instanton);
    let mut out = LatticeSums { n_max, v: Vec::new(), c: Vec::new(), tail_bound: 0.0 };
    if cfg.semiflat {
        return Ok(out);
    }
    for k in 0..=n_max {
        for n in if k == 0 { vec![0] } else { vec![k, -k] } {
            let v = v_inst(n, p, cfg)?;
            let c = a_inst_coeff(n, p, cfg)?;
            out.tail_bound += v.tail_bound + 2.0 * PI * c.tail_bound / (p.t - n as f64).norm();
            out.v.push((n, v.value));
            out.c.push((n, c.value));
        }
    }
    out.tail_bound += lattice_tail_bound(p.t, n_max, &cfg.instanton);
    Ok(out)
}

/// N_β^inst = Σ_n V_n.
pub fn n_inst_beta(p: &FiberPoint, cfg: &HkConfig) -> Result<Estimate<f64>> {
    let s = lattice_sums(p, cfg)?;
    Ok(Estimate { value: s.v.iter().map(|(_, v)| v).sum(), tail_bound: s.tail_bound, terms: s.v.len() })
}

/// W = dθ_β∨ − τ dθ_β and W^inst = Σ_n (2πA_n − iV_n dθ_β).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WCoeffs {
    pub w: OneForm,
    pub w_inst: OneForm,
    pub tail_bound: f64,
}

impl WCoeffs {
    pub fn total(&self) -> OneForm {
        self.w + self.w_inst
    }
}

fn w_from_lattice(p: &FiberPoint, s: &LatticeSums) -> WCoeffs {
    let w = OneForm::basis(D_THETA_BETA_VEE) - tau_raw(p.t) * OneForm::basis(D_THETA_BETA);
    let mut w_inst = OneForm::default();
    for ((n, v), (_, c)) in s.v.iter().zip(&s.c) {
        w_inst = w_inst + 2.0 * PI * a_inst_form(*n, p, *c) - (I * *v) * OneForm::basis(D_THETA_BETA);
    }
    WCoeffs { w, w_inst, tail_bound: s.tail_bound }
}

pub fn w_coeffs(p: &FiberPoint, cfg: &HkConfig) -> Result<WCoeffs> {
    let s = lattice_sums(p, cfg)?;
    Ok(w_from_lattice(p, &s))
}

/// Per-charge instanton data: V_γ and the scalar a_γ in A_γ = a_γ(dZ/Z − dZ̄/Z̄).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChargeTerm {
    pub gamma: Charge,
    pub z: Complex64,
    pub v: Complex64,
    pub a: Complex64,
    pub tail_bound: f64,
}

impl ChargeTerm {
    /// dZ_γ; only charges without a β∨ component occur in the support.
    pub fn dz(&self) -> OneForm {
        self.gamma.n_beta as f64 * OneForm::basis(DT)
    }

    pub fn dtheta(&self) -> OneForm {
        self.gamma.n_beta_vee as f64 * OneForm::basis(D_THETA_BETA_VEE)
            + self.gamma.n_beta as f64 * OneForm::basis(D_THETA_BETA)
    }

    pub fn a_form(&self) -> OneForm {
        let dz = self.dz();
        (self.a / self.z) * dz - (self.a / self.z.conj()) * dz.conj()
    }
}

/// V_γ = (1/2π)Σ_{m>0}e^{imθ_γ}K₀(2πmR|Z_γ|),
/// a_γ = −(1/4π)Σ_{m>0}e^{imθ_γ}R|Z_γ|K₁(2πmR|Z_γ|), over supp Ω.
pub fn charge_terms(p: &FiberPoint, cfg: &HkConfig) -> Result<Vec<ChargeTerm>> {
    check_base(p.t)?;
    if cfg.semiflat {
        return Ok(Vec::new());
    }
    let n_max = lattice_cut(p.t, &cfg.instanton);
    let flavor = cfg.spectrum == Spectrum::Full;
    let mut out = Vec::new();
    for gamma in support(n_max, flavor) {
        if gamma.n_beta_vee != 0 {
            return Err(Error::Domain(format!("unexpected charge {gamma} in the support")));
        }
        let z = gamma.n_beta as f64 * p.t + gamma.n_delta as f64;
        let d = z.norm();
        let fb = fourier_bessel(d, p.theta(gamma), &cfg.instanton, &cfg.budget)?;
        let rd = cfg.instanton.scale_r * d;
        out.push(ChargeTerm {
            gamma,
            z,
            v: fb.k0 / (2.0 * PI),
            a: -rd * fb.k1 / (4.0 * PI),
            tail_bound: fb.tail * (1.0 + rd),
        });
    }
    Ok(out)
}

/// Ω(γ)⟨β∨, γ⟩; zero weights are skipped by every per-charge sum.
fn weight(g: Charge) -> i64 {
    omega(g) * pairing(Charge::BETA_VEE, g)
}

/// N^inst = Σ Ω(γ)⟨β∨,γ⟩²V_γ and W^inst = Σ Ω(γ)⟨β∨,γ⟩(2πA_γ − iV_γ dθ_γ).
pub fn instanton_by_charge(terms: &[ChargeTerm]) -> (f64, OneForm) {
    let mut n_inst = ZERO;
    let mut w_inst = OneForm::default();
    for term in terms {
        if weight(term.gamma) == 0 {
            continue;
        }
        let om = omega(term.gamma) as f64;
        let ng = pairing(Charge::BETA_VEE, term.gamma) as f64;
        n_inst += om * ng * ng * term.v;
        w_inst = w_inst + om * ng * (2.0 * PI * term.a_form() - (I * term.v) * term.dtheta());
    }
    (n_inst.re, w_inst)
}

/// N = Im τ + N^inst, with the degeneracy check.
fn checked_n(n: f64, cfg: &HkConfig) -> Result<f64> {
    if !n.is_finite() || n.abs() < cfg.instanton.degeneracy_tol {
        return Err(Error::Degenerate(format!("N_β + N_β^inst = {n}")));
    }
    Ok(n)
}

/// g = N|dt|² + (1/4π²)N⁻¹|W + W^inst|².
fn assemble(n: f64, w: &OneForm) -> MetricMatrix {
    let mut g = MetricMatrix::zero();
    g.add_square(n, &OneForm::basis(DT));
    g.add_square(1.0 / (FOUR_PI_SQ * n), w);
    g
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricReport {
    pub metric: MetricMatrix,
    /// N_β + N_β^inst.
    pub n_total: f64,
    pub tail_bound: f64,
}

/// The instanton-corrected metric, assembled from the per-charge sums.
pub fn metric_gn(p: &FiberPoint, cfg: &HkConfig) -> Result<MetricMatrix> {
    Ok(metric_gn_report(p, cfg)?.metric)
}

pub fn metric_gn_report(p: &FiberPoint, cfg: &HkConfig) -> Result<MetricReport> {
    let terms = charge_terms(p, cfg)?;
    let (n_inst, w_inst) = instanton_by_charge(&terms);
    let n = checked_n(im_tau_raw(p.t) + n_inst, cfg)?;
    let w = OneForm::basis(D_THETA_BETA_VEE) - tau_raw(p.t) * OneForm::basis(D_THETA_BETA) + w_inst;
    let metric = assemble(n, &w);

    // first-order propagation of the dropped terms, plus rounding
    let mut tail: f64 = terms.iter().filter(|t| weight(t.gamma) != 0).map(|t| t.tail_bound).sum();
    if !cfg.semiflat {
        tail += lattice_tail_bound(p.t, lattice_cut(p.t, &cfg.instanton), &cfg.instanton);
    }
    let wn = w.max_norm() * 2.0;
    let dn = tail;
    let dw = 2.0 * PI * tail;
    let first = 2.0 * (dn * (1.0 + wn * wn / (FOUR_PI_SQ * n * n)) + 2.0 * wn * dw / (FOUR_PI_SQ * n.abs()));
    let rounding = 16.0 * f64::EPSILON * metric.0.abs().max() * (terms.len() as f64 + 4.0);
    Ok(MetricReport { metric, n_total: n, tail_bound: first + rounding })
}

/// The semi-flat metric N_β|dt|² + (1/4π²)N_β⁻¹|dθ_β∨ − τ dθ_β|².
pub fn semiflat_metric(p: &FiberPoint) -> Result<MetricMatrix> {
    let n = im_tau(p.t)?;
    let w = OneForm::basis(D_THETA_BETA_VEE) - tau(p.t)? * OneForm::basis(D_THETA_BETA);
    Ok(assemble(n, &w))
}

/// ω₁, ω₂, ω₃ and ϖ = ω₁ + iω₂.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KahlerForms {
    pub holomorphic: TwoForm,
    pub omega1: TwoForm,
    pub omega2: TwoForm,
    pub omega3: TwoForm,
}

impl KahlerForms {
    fn from_parts(holomorphic: TwoForm, omega3: TwoForm) -> Self {
        let bar = holomorphic.conj();
        KahlerForms {
            holomorphic,
            omega1: 0.5 * (holomorphic + bar),
            omega2: Complex64::new(0.0, -0.5) * (holomorphic - bar),
            omega3,
        }
    }
}

/// ϖ = (1/2π)dt∧(W + W^inst) and
/// ω₃ = (i/2)(Im τ + ΣV_n)dt∧dt̄ − (1/4π²)dθ_β∨∧dθ_β + (1/2π)Σ dθ_β∧A_n.
pub fn kahler_forms(p: &FiberPoint, cfg: &HkConfig) -> Result<KahlerForms> {
    let s = lattice_sums(p, cfg)?;
    let v_sum: f64 = s.v.iter().map(|(_, v)| v).sum();
    checked_n(im_tau_raw(p.t) + v_sum, cfg)?;
    let w = w_from_lattice(p, &s);
    let holomorphic = (1.0 / (2.0 * PI)) * OneForm::basis(DT).wedge(&w.total());

    let mut omega3 = TwoForm::zero();
    omega3.add_term(DT, DT_BAR, Complex64::new(0.0, 0.5 * (im_tau_raw(p.t) + v_sum)));
    omega3.add_term(D_THETA_BETA_VEE, D_THETA_BETA, Complex64::new(-1.0 / FOUR_PI_SQ, 0.0));
    for (n, c) in &s.c {
        omega3 = omega3 + (1.0 / (2.0 * PI)) * OneForm::basis(D_THETA_BETA).wedge(&a_inst_form(*n, p, *c));
    }
    Ok(KahlerForms::from_parts(holomorphic, omega3))
}

/// ϖ from −(1/2π)⟨dZ∧dθ⟩ + Σ_γ Ω(γ)(dZ_γ∧A_γ + (i/2π)V_γ dθ_γ∧dZ_γ).
pub fn holomorphic_form_by_charge(p: &FiberPoint, cfg: &HkConfig) -> Result<TwoForm> {
    let terms = charge_terms(p, cfg)?;
    let dt = OneForm::basis(DT);
    let dz_vee = tau_raw(p.t) * dt;
    let pairing_term =
        dz_vee.wedge(&OneForm::basis(D_THETA_BETA)) - dt.wedge(&OneForm::basis(D_THETA_BETA_VEE));
    let mut f = (-1.0 / (2.0 * PI)) * pairing_term;
    for term in &terms {
        let om = omega(term.gamma) as f64;
        let dz = term.dz();
        f = f + om * dz.wedge(&term.a_form()) + (I * om * term.v / (2.0 * PI)) * term.dtheta().wedge(&dz);
    }
    Ok(f)
}

/// ω₃ from (1/4)⟨dZ∧dZ̄⟩ − (1/8π²)⟨dθ∧dθ⟩ + Σ_γ Ω(γ)((i/2)V_γ dZ_γ∧dZ̄_γ + (1/2π)dθ_γ∧A_γ).
pub fn omega3_by_charge(p: &FiberPoint, cfg: &HkConfig) -> Result<TwoForm> {
    let terms = charge_terms(p, cfg)?;
    let dt = OneForm::basis(DT);
    let dz_vee = tau_raw(p.t) * dt;
    let dth = |k| OneForm::basis(k);
    let dz_pair = dz_vee.wedge(&dt.conj()) - dt.wedge(&dz_vee.conj());
    let th_pair = dth(D_THETA_BETA_VEE).wedge(&dth(D_THETA_BETA)) - dth(D_THETA_BETA).wedge(&dth(D_THETA_BETA_VEE));
    let mut f = 0.25 * dz_pair - (1.0 / (8.0 * PI * PI)) * th_pair;
    for term in &terms {
        let om = omega(term.gamma) as f64;
        let dz = term.dz();
        f = f + (0.5 * I * om * term.v) * dz.wedge(&dz.conj()) + (om / (2.0 * PI)) * term.dtheta().wedge(&term.a_form());
    }
    Ok(f)
}

/// Horizontal coefficient of T = (Im τ + (1/π)Σ_nΣ_{m>0}cos(mθ_β)K₀(2πRm|t − n|))|dt|²,
/// summed directly as a double series. Requires θ_δ = 0.
pub fn tensor_t(p: &FiberPoint, cfg: &HkConfig) -> Result<f64> {
    check_base(p.t)?;
    if p.theta_delta != 0.0 {
        return Err(Error::Domain("the tensor T is evaluated at θ_δ = 0".into()));
    }
    let n_max = lattice_cut(p.t, &cfg.instanton);
    let r = cfg.instanton.scale_r;
    let mut total = 0.0;
    for k in 0..=n_max {
        for n in if k == 0 { vec![0] } else { vec![k, -k] } {
            let x1 = 2.0 * PI * r * (p.t - n as f64).norm();
            let ratio = 1.0 / (1.0 - (-x1).exp());
            let mut s = 0.0;
            for m in 1..=cfg.budget.max_terms {
                let x = m as f64 * x1;
                let k0 = bessel_k01_scaled(x)?.0 * (-x).exp();
                s += (m as f64 * p.theta_beta).cos() * k0;
                if bessel_k_bound(x + x1) * ratio <= cfg.budget.series_tol * s.abs().max(1.0) {
                    break;
                }
            }
            total += s / PI;
        }
    }
    Ok(im_tau_raw(p.t) + total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lagrangian_kills_connection_terms() {
        let p = FiberPoint::on_lagrangian(c(0.1, 0.3));
        let cfg = HkConfig::new();
        for n in -3..=3 {
            assert_eq!(a_inst_coeff(n, &p, &cfg).unwrap().value, c(0.0, 0.0));
        }
        let w = w_coeffs(&p, &cfg).unwrap().total();
        assert_eq!(w.0[DT], c(0.0, 0.0));
        assert_eq!(w.0[D_THETA_BETA_VEE], c(1.0, 0.0));
    }

    #[test]
    fn far_terms_vanish() {
        let p = FiberPoint::on_lagrangian(c(0.0, 0.4));
        let v = v_inst(40, &p, &HkConfig::new()).unwrap();
        assert_eq!(v.value, 0.0);
        assert!(v.tail_bound < 1e-90);
    }

    #[test]
    fn two_routes_for_the_holomorphic_form() {
        let p = FiberPoint::new(c(0.13, 0.21), 0.4, 1.1).with_theta_delta(0.3);
        let cfg = HkConfig::new();
        let a = kahler_forms(&p, &cfg).unwrap().holomorphic;
        let b = holomorphic_form_by_charge(&p, &cfg).unwrap();
        assert!(a.distance(&b) < 1e-12, "{}", a.distance(&b));
        let a3 = kahler_forms(&p, &cfg).unwrap().omega3;
        let b3 = omega3_by_charge(&p, &cfg).unwrap();
        assert!(a3.distance(&b3) < 1e-12);
    }
}
