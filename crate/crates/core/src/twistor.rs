//! Twistor coordinates at R = 1 by quadrature along BPS rays, and the
//! extraction of ω₁, ω₂, ω₃ from the ζ-family ϖ(ζ).

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bps::{omega, pairing, support, z_beta_vee, Charge};
use crate::error::{Error, Result};
use crate::forms::TwoForm;
use crate::hk::{lattice_cut, FiberPoint, HkConfig, Spectrum};
use crate::quad::integrate_breaks;
use crate::specfn::bessel::bessel_k_bound;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Normalisation of the semi-flat coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Convention {
    /// exp(πZ/ζ + iθ + πζZ̄).
    #[default]
    Standard,
    /// exp(2πiZ/ζ + iθ − 2πiζZ̄), i.e. Z replaced by Z′ = 2iZ.
    Rescaled,
}

impl Convention {
    fn apply(self, z: Complex64) -> Complex64 {
        match self {
            Convention::Standard => z,
            Convention::Rescaled => 2.0 * I * z,
        }
    }
}

/// Ray quadrature settings. Panels are 15-point Gauss–Kronrod; the ray is cut
/// at ±s_max where the integrand is below the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureSpec {
    pub tol: f64,
    pub max_depth: usize,
    /// Overrides the automatic truncation of the s-range.
    pub s_max: Option<f64>,
    /// ζ closer than this (radians) to a ray is rejected.
    pub ray_angle_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { tol: 1e-13, max_depth: 40, s_max: None, ray_angle_tol: 1e-12 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct TwistorConfig {
    pub hk: HkConfig,
    pub quad: QuadratureSpec,
    pub convention: Convention,
}

impl TwistorConfig {
    pub fn new() -> Self {
        TwistorConfig { hk: HkConfig::new(), ..Default::default() }
    }
}

fn central(p: &FiberPoint, g: Charge) -> Result<Complex64> {
    let mut z = Complex64::new(g.n_delta as f64, 0.0) + g.n_beta as f64 * p.t;
    if g.n_beta_vee != 0 {
        z += g.n_beta_vee as f64 * z_beta_vee(p.t, 0)?;
    }
    Ok(z)
}

/// log 𝒳^sf_γ(ζ), the exponent itself (no branch choice).
pub fn log_x_semiflat(g: Charge, p: &FiberPoint, zeta: Complex64, conv: Convention) -> Result<Complex64> {
    if zeta.norm() == 0.0 {
        return Err(Error::Domain("ζ = 0".into()));
    }
    let z = conv.apply(central(p, g)?);
    Ok(PI * z / zeta + I * p.theta(g) + PI * zeta * z.conj())
}

pub fn x_semiflat(g: Charge, p: &FiberPoint, zeta: Complex64, conv: Convention) -> Result<Complex64> {
    Ok(log_x_semiflat(g, p, zeta, conv)?.exp())
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// A ray integral with its quadrature error and an a-priori bound on |value|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RayValue {
    pub value: Complex64,
    pub error: f64,
    pub bound: f64,
}

/// ∫ (dζ′/ζ′)((ζ′ + ζ)/(ζ′ − ζ))log(1 − 𝒳^sf_γ′(ζ′)) along ℝ₋Z_γ′ (ℝ₋Z′_γ′ when
/// rescaled), with ζ′ = −(Z/|Z|)e^s.
pub fn ray_integral(g: Charge, p: &FiberPoint, zeta: Complex64, cfg: &TwistorConfig) -> Result<RayValue> {
    let z = cfg.convention.apply(central(p, g)?);
    let a = z.norm();
    if a == 0.0 {
        return Err(Error::Domain(format!("Z_{g} = 0")));
    }
    if zeta.norm() == 0.0 {
        return Err(Error::Domain("ζ = 0".into()));
    }
    let dir = -z / a;
    let phi = angle_gap(zeta.arg(), dir.arg());
    if phi < cfg.quad.ray_angle_tol {
        return Err(Error::OnRay(format!("ζ = {zeta} on the ray of {g}")));
    }
    // |(ζ′+ζ)/(ζ′−ζ)| ≤ 2/sin φ for φ < π/2 and ≤ 2 beyond
    let c = if phi < 0.5 * PI { 2.0 / phi.sin() } else { 2.0 };
    let x = 2.0 * PI * a;
    let bound = c * bessel_k_bound(x) / (1.0 - (-x).exp());
    if bound < 1e-60 {
        return Ok(RayValue { value: ZERO, error: 0.0, bound });
    }
    let phase = Complex64::new(0.0, p.theta(g)).exp();
    let integrand = |s: f64| {
        let zp = dir * s.exp();
        let mag = (-x * s.cosh()).exp();
        let w = phase * mag;
        let lg = if mag < 1e-8 { -w - 0.5 * w * w - w * w * w / 3.0 } else { (Complex64::new(1.0, 0.0) - w).ln() };
        (zp + zeta) / (zp - zeta) * lg
    };
    // integrand ≤ c·e^{−x cosh s}; cut where that drops below tol·1e−3
    let s_max = cfg.quad.s_max.unwrap_or_else(|| {
        let need = ((c / (cfg.quad.tol * 1e-3)).ln() / x).max(1.0);
        need.acosh() + 0.5
    });
    let mid = zeta.norm().ln().clamp(-s_max, s_max);
    let q = integrate_breaks(integrand, &[-s_max, mid, s_max], cfg.quad.tol, cfg.quad.max_depth)?;
    Ok(RayValue { value: q.value, error: q.error + cfg.quad.tol * 1e-3, bound })
}

/// log 𝒳_β∨(ζ) with its accumulated quadrature error and truncation bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwistorValue {
    pub log_value: Complex64,
    pub error: f64,
    pub tail_bound: f64,
}

impl TwistorValue {
    pub fn value(&self) -> Complex64 {
        self.log_value.exp()
    }
}

/// log 𝒳_β∨ = log 𝒳^sf_β∨ − (1/4πi)Σ_γ′ Ω(γ′)⟨β∨, γ′⟩·(ray integral of γ′).
/// Terms are added in support order (|n| then sign).
pub fn log_x_beta_vee(p: &FiberPoint, zeta: Complex64, cfg: &TwistorConfig) -> Result<TwistorValue> {
    let sf = log_x_semiflat(Charge::BETA_VEE, p, zeta, cfg.convention)?;
    if cfg.hk.semiflat {
        return Ok(TwistorValue { log_value: sf, error: 0.0, tail_bound: 0.0 });
    }
    let n_max = lattice_cut(p.t, &cfg.hk.instanton);
    let mut acc = ZERO;
    let mut error = 0.0;
    for g in support(n_max, cfg.hk.spectrum == Spectrum::Full) {
        let weight = (omega(g) * pairing(Charge::BETA_VEE, g)) as f64;
        let r = ray_integral(g, p, zeta, cfg)?;
        acc += weight * r.value;
        error += weight.abs() * r.error;
    }
    // |n| > N: rays approach the real axis of the ζ-plane
    let phi = zeta.arg().sin().abs().max(1e-3);
    let scale = match cfg.convention {
        Convention::Standard => 1.0,
        Convention::Rescaled => 2.0,
    };
    let d = (n_max + 1) as f64 - p.t.norm();
    let x = 2.0 * PI * scale * d;
    let tail = 4.0 * (2.0 / phi) * bessel_k_bound(x) / ((1.0 - (-x).exp()) * (1.0 - (-2.0 * PI * scale).exp()));
    let k = -1.0 / (4.0 * PI * I);
    Ok(TwistorValue { log_value: sf + k * acc, error: error / (4.0 * PI), tail_bound: tail / (4.0 * PI) })
}

pub fn x_beta_vee(p: &FiberPoint, zeta: Complex64, cfg: &TwistorConfig) -> Result<Complex64> {
    Ok(log_x_beta_vee(p, zeta, cfg)?.value())
}

/// ϖ(ζ) = (1/4π²)dlog𝒳_β∨ ∧ dlog𝒳^sf_β in the real coframe (dx, dy, dθ_β∨, dθ_β),
/// with dlog𝒳_β∨ from central differences of step h. Uses the standard normalisation.
pub fn varpi_at(p: &FiberPoint, zeta: Complex64, cfg: &TwistorConfig, h: f64) -> Result<[[Complex64; 4]; 4]> {
    let mut cfg = *cfg;
    cfg.convention = Convention::Standard;
    let shift = |k: usize, s: f64| {
        let mut q = *p;
        match k {
            0 => q.t += s,
            1 => q.t += I * s,
            2 => q.theta_beta_vee += s,
            _ => q.theta_beta += s,
        }
        q
    };
    let mut u = [ZERO; 4];
    for (k, uk) in u.iter_mut().enumerate() {
        let fp = log_x_beta_vee(&shift(k, h), zeta, &cfg)?.log_value;
        let fm = log_x_beta_vee(&shift(k, -h), zeta, &cfg)?.log_value;
        *uk = (fp - fm) / (2.0 * h);
    }
    let v = [PI / zeta + PI * zeta, I * PI / zeta - I * PI * zeta, ZERO, I];
    let k = 1.0 / (4.0 * PI * PI);
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| k * (u[i] * v[j] - u[j] * v[i]))))
}

/// ω₁, ω₂, ω₃ recovered from ζϖ(ζ) = −(i/2)(ω₁ + iω₂) + ζω₃ − (i/2)ζ²(ω₁ − iω₂).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarpiFit {
    pub holomorphic: TwoForm,
    pub omega1: TwoForm,
    pub omega2: TwoForm,
    pub omega3: TwoForm,
    /// Largest fit residual relative to the largest sample.
    pub residual: f64,
    pub samples: Vec<Complex64>,
}

/// Eight points of the unit circle kept away from the BPS rays, which
/// accumulate at arguments 0 and π.
pub fn default_samples(p: &FiberPoint, cfg: &TwistorConfig) -> Vec<Complex64> {
    let n_max = lattice_cut(p.t, &cfg.hk.instanton);
    let rays: Vec<f64> = (-n_max..=n_max)
        .flat_map(|n| {
            let w = p.t + n as f64;
            [w.arg(), (-w).arg()]
        })
        .collect();
    let mut out = Vec::new();
    for base in [0.5 * PI, -0.5 * PI] {
        for off in [-1.0, -0.35, 0.35, 1.0] {
            let mut a: f64 = base + off;
            // nudge away from any ray by at least 0.05 rad
            for _ in 0..20 {
                match rays.iter().find(|r| angle_gap(a, **r) < 0.05) {
                    Some(r) => a += if a > *r { 0.03 } else { -0.03 },
                    None => break,
                }
            }
            out.push(Complex64::from_polar(1.0, a));
        }
    }
    out
}

pub fn varpi_coefficients(p: &FiberPoint, cfg: &TwistorConfig, h: f64) -> Result<VarpiFit> {
    let samples = default_samples(p, cfg);
    varpi_coefficients_at(p, cfg, h, &samples, 1e-5)
}

/// Least-squares fit of c₀ + c₁ζ + c₂ζ² to ζϖ(ζ) at the given samples.
pub fn varpi_coefficients_at(
    p: &FiberPoint,
    cfg: &TwistorConfig,
    h: f64,
    samples: &[Complex64],
    fit_tol: f64,
) -> Result<VarpiFit> {
    if samples.len() < 3 {
        return Err(Error::Fit("need at least three samples".into()));
    }
    let values = samples.iter().map(|z| varpi_at(p, *z, cfg, h)).collect::<Result<Vec<_>>>()?;
    let a = DMatrix::from_fn(samples.len(), 3, |r, c| samples[r].powu(c as u32));
    let svd = a.clone().svd(true, true);
    let mut coeffs = [[[ZERO; 4]; 4]; 3];
    let mut residual: f64 = 0.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            let y = DVector::from_fn(samples.len(), |r, _| samples[r] * values[r][i][j]);
            let c = svd.solve(&y, 1e-14).map_err(|e| Error::Fit(e.to_string()))?;
            let scale = y.iter().map(|v| v.norm()).fold(1e-300, f64::max);
            let res = (&a * &c - &y).iter().map(|v| v.norm()).fold(0.0, f64::max) / scale;
            residual = residual.max(if scale > 1e-14 { res } else { 0.0 });
            for (k, ck) in coeffs.iter_mut().enumerate() {
                ck[i][j] = c[k];
                ck[j][i] = -c[k];
            }
        }
    }
    if residual > fit_tol {
        return Err(Error::Fit(format!("Laurent fit residual {residual:e} exceeds {fit_tol:e}")));
    }
    let holomorphic = TwoForm::from_real_coframe(&coeffs[0]).map(|c| 2.0 * I * c);
    let omega3 = TwoForm::from_real_coframe(&coeffs[1]);
    let bar = holomorphic.conj();
    Ok(VarpiFit {
        holomorphic,
        omega1: 0.5 * (holomorphic + bar),
        omega2: Complex64::new(0.0, -0.5) * (holomorphic - bar),
        omega3,
        residual,
        samples: samples.to_vec(),
    })
}
