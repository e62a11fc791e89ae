//! Affine special Kähler data of the resolved conifold: periods, prepotential,
//! τ, the M± regions, the monodromy around z = 0 and the Picard–Fuchs check.

pub mod theta;

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::bps::{in_strip, on_negative_imaginary_axis};
use crate::config::WALL_TOL;
use crate::error::{Error, Result};
use crate::specfn::polylog::{li2, li3};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// (ϖ⁰, ϖ¹, ϖ², ϖ³).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodVector {
    pub w0: Complex64,
    pub w1: Complex64,
    pub w2: Complex64,
    pub w3: Complex64,
}

impl PeriodVector {
    pub fn as_array(&self) -> [Complex64; 4] {
        [self.w0, self.w1, self.w2, self.w3]
    }

    pub fn from_array(a: [Complex64; 4]) -> Self {
        PeriodVector { w0: a[0], w1: a[1], w2: a[2], w3: a[3] }
    }
}

fn q_of(t: Complex64) -> Complex64 {
    (2.0 * PI * I * t).exp()
}

fn check_m0(t: Complex64) -> Result<()> {
    if !in_strip(t) {
        return Err(Error::Domain(format!("|Re t| ≥ 1/2 at t = {t}")));
    }
    if on_negative_imaginary_axis(t) {
        return Err(Error::Domain(format!("t = {t} on iℝ≤0")));
    }
    let q = q_of(t);
    if (2.0 * q.re - 1.0).abs() < WALL_TOL {
        return Err(Error::Domain(format!("t = {t} on the wall 2Re q = 1")));
    }
    Ok(())
}

/// Periods at t ∈ M₀, with log z = 2πit.
pub fn periods(t: Complex64) -> Result<PeriodVector> {
    check_m0(t)?;
    periods_continued(t)
}

/// The same closed form with log z = 2πit taken literally, valid wherever
/// e^{2πit} ∉ [1, ∞). Outside the strip this is the continuation along
/// horizontal paths, which is what the monodromy check needs.
pub fn periods_continued(t: Complex64) -> Result<PeriodVector> {
    let q = q_of(t);
    let (l2, l3) = (li2(q).map_err(to_domain)?, li3(q).map_err(to_domain)?);
    let ell = 2.0 * PI * I * t;
    let tpi = 2.0 * PI * I;
    Ok(PeriodVector {
        w0: Complex64::new(1.0, 0.0),
        w1: t,
        w2: (0.5 * ell * ell + l2) / (tpi * tpi),
        w3: (-ell * ell * ell / 6.0 - ell * l2 + 2.0 * l3) / (tpi * tpi * tpi),
    })
}

fn to_domain(e: Error) -> Error {
    match e {
        Error::BranchCut(s) => Error::Domain(s),
        other => other,
    }
}

/// F₀ = ((log z)³/6 + Li₃(z))/(2πi)³; the ASK prepotential is −F₀.
pub fn prepotential_f0(t: Complex64) -> Result<Complex64> {
    check_m0(t)?;
    let tpi = 2.0 * PI * I;
    Ok(t * t * t / 6.0 + li3(q_of(t))? / (tpi * tpi * tpi))
}

fn check_m(t: Complex64) -> Result<Complex64> {
    if !in_strip(t) {
        return Err(Error::Domain(format!("|Re t| ≥ 1/2 at t = {t}")));
    }
    if t.norm() == 0.0 {
        return Err(Error::Domain("t = 0".into()));
    }
    let q = q_of(t);
    if (2.0 * q.re - 1.0).abs() < WALL_TOL {
        return Err(Error::Wall(format!("2Re(e^(2πit)) = 1 at t = {t}")));
    }
    Ok(q)
}

/// τ = (log(1 − e^{2πit}) − 2πit)/(2πi) = ∂²𝔉/∂t².
pub fn tau(t: Complex64) -> Result<Complex64> {
    let q = check_m(t)?;
    Ok((Complex64::new(1.0, 0.0) - q).ln() / (2.0 * PI * I) - t)
}

/// Im τ = −(1/2π)log|(1 − q)/q|.
pub fn im_tau(t: Complex64) -> Result<f64> {
    let q = check_m(t)?;
    Ok(-((Complex64::new(1.0, 0.0) - q) / q).norm().ln() / (2.0 * PI))
}

/// Im τ without the wall check; used where the wall is handled downstream.
pub(crate) fn im_tau_raw(t: Complex64) -> f64 {
    let q = q_of(t);
    -((Complex64::new(1.0, 0.0) - q) / q).norm().ln() / (2.0 * PI)
}

pub(crate) fn tau_raw(t: Complex64) -> Complex64 {
    (Complex64::new(1.0, 0.0) - q_of(t)).ln() / (2.0 * PI * I) - t
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    MPlus,
    MMinus,
    Wall,
    OutsideStrip,
    /// t = 0, not a point of M.
    Puncture,
}

/// Region from the sign of 2Re(e^{2πit}) − 1 (positive exactly on M₊).
pub fn region_classify(t: Complex64) -> Region {
    if !in_strip(t) {
        return Region::OutsideStrip;
    }
    if t.norm() == 0.0 {
        return Region::Puncture;
    }
    let d = 2.0 * q_of(t).re - 1.0;
    if d.abs() < WALL_TOL {
        Region::Wall
    } else if d > 0.0 {
        Region::MPlus
    } else {
        Region::MMinus
    }
}

/// Monodromy of the periods under z ↦ e^{2πi}z, i.e. t ↦ t + 1.
pub fn monodromy_matrix_z0() -> [[Rational64; 4]; 4] {
    let r = Rational64::new;
    [
        [r(1, 1), r(0, 1), r(0, 1), r(0, 1)],
        [r(1, 1), r(1, 1), r(0, 1), r(0, 1)],
        [r(1, 2), r(1, 1), r(1, 1), r(0, 1)],
        [r(-1, 6), r(-1, 2), r(-1, 1), r(1, 1)],
    ]
}

pub fn apply_monodromy(m: &[[Rational64; 4]; 4], p: &PeriodVector) -> PeriodVector {
    let v = p.as_array();
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (i, row) in m.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            out[i] += v[j] * (*c.numer() as f64 / *c.denom() as f64);
        }
    }
    PeriodVector::from_array(out)
}

/// max_i |L ϖ^i| with L = θ²(1 − z)θ², evaluated through exact θ-calculus.
pub fn pf_residual(t: Complex64) -> Result<f64> {
    check_m0(t)?;
    let q = q_of(t);
    let ell = 2.0 * PI * I * t;
    let lis = [-(Complex64::new(1.0, 0.0) - q).ln(), li2(q)?, li3(q)?];
    let tpi = (2.0 * PI * I).norm();
    let mut worst: f64 = 0.0;
    for (k, p) in theta::scaled_periods().iter().enumerate() {
        let v = theta::picard_fuchs(p).eval(q, ell, lis);
        worst = worst.max(v.norm() / tpi.powi(k as i32));
    }
    Ok(worst)
}

/// Coefficient of the ASK Kähler form (i/2)·Im τ·dt∧dt̄.
pub fn ask_metric_coefficient(t: Complex64) -> Result<f64> {
    im_tau(t)
}
