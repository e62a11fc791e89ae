//! Conformal limit of the twistor coordinates on the Lagrangian θ = 0.
//!
//! 𝒳_β and 𝒳_δ are plain exponentials. 𝒳_{β∨} is exp(2πiZ_{β∨}/λ) times the
//! exponential of a conditionally convergent sum of signed Binet terms
//!
//! log 𝒳^inst = T(0) + Σ_{n>0} (T(n) + T(−n)),
//! T(n) = μ((t+n)/λ) if a_n = Re((t+n)/λ) > 0, −μ(−(t+n)/λ) otherwise.
//!
//! Each pair is O(n⁻²) while the one-sided series drifts like log n, so the
//! pairing is part of the definition. Past a cut N₀ the pairs are summed in
//! closed form from the Stirling expansion of μ (digamma and Hurwitz zeta),
//! with a rigorous remainder bound.

pub mod rays;
pub mod rh;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bps::{bounding_rays, z_beta_vee, BpsRay, RayIndex};
use crate::config::{Budget, RAY_ANGLE_TOL};
use crate::error::{Error, Result};
use crate::specfn::{binet_mu_continued, digamma, hurwitz_zeta, STIRLING};

pub use rays::{
    crossed_rays, infinite_product_jump, jump_factor, log_infinite_product_jump, log_jump_factor, log_jump_product,
    CrossedRange, Family, ProductSector,
};
pub use rh::{base_sector, log_base_phi, log_rh_solution_phi, log_rh_solution_phi_with, rh_solution_phi, RhConfig};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Safety margin added to the last index where the sign pattern can still change.
pub const SIGN_MARGIN: i64 = 5;

/// Stirling terms summed in closed form in the tail.
const TAIL_ORDER: usize = 8;

pub fn conformal_x_beta(t: Complex64, lambda: Complex64) -> Complex64 {
    (2.0 * PI * I * t / lambda).exp()
}

pub fn conformal_x_delta(lambda: Complex64) -> Complex64 {
    (2.0 * PI * I / lambda).exp()
}

/// λ together with the sign data that fixes which Binet branch each term uses.
///
/// The signs come from a reference direction. For the natural value that
/// direction is λ itself; for the continuation of a neighbouring sector it is
/// any direction inside that sector, and terms whose sign disagrees with λ are
/// continued through the imaginary axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorContext {
    pub t: Complex64,
    pub lambda: Complex64,
    /// Unit vector of the reference direction.
    pub direction: Complex64,
    /// Past this index the signs follow the asymptotic pattern.
    pub m: i64,
    /// sign(a_n) at the reference direction for n = −m..=m.
    pub signs: Vec<i8>,
    /// sign(Re(1/λ)); for n > m, sign(a_n) = b_sign and sign(a_{−n}) = −b_sign.
    pub b_sign: i8,
    /// Rays bounding the reference direction, clockwise one first.
    pub bounding_rays: (BpsRay, BpsRay),
}

fn sign_of(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else {
        -1
    }
}

/// Smallest index past which sign(a_n) is constant, plus the margin.
fn stable_index(t: Complex64, dir: Complex64) -> f64 {
    let a = (t / dir).re;
    let b = dir.inv().re;
    (a / b).abs().ceil()
}

impl SectorContext {
    pub fn new(t: Complex64, lambda: Complex64, budget: &Budget) -> Result<Self> {
        Self::with_direction(t, lambda, lambda, budget)
    }

    pub fn with_direction(t: Complex64, lambda: Complex64, direction: Complex64, budget: &Budget) -> Result<Self> {
        if !(t.im > 0.0) {
            return Err(Error::Domain(format!("conformal limit needs Im t > 0, got {t}")));
        }
        if lambda.norm() == 0.0 || direction.norm() == 0.0 {
            return Err(Error::Domain("λ = 0".into()));
        }
        let dir = direction / direction.norm();
        let rays = bounding_rays(t, dir, RAY_ANGLE_TOL)?;
        let b_sign = sign_of(dir.inv().re);
        if sign_of(lambda.inv().re) != b_sign {
            return Err(Error::Regime(format!(
                "λ = {lambda} and the reference direction lie on opposite sides of ±l_∞"
            )));
        }
        let raw = stable_index(t, dir).max(stable_index(t, lambda)) + SIGN_MARGIN as f64;
        if !raw.is_finite() {
            return Err(Error::Regime(format!("no stable sign pattern at λ = {lambda}")));
        }
        if raw > budget.max_terms as f64 {
            return Err(Error::Budget(format!("sign pattern needs {raw} terms")));
        }
        let m = raw as i64;
        let signs = (-m..=m).map(|n| sign_of(((t + n as f64) / dir).re)).collect();
        Ok(SectorContext { t, lambda, direction: dir, m, signs, b_sign, bounding_rays: rays })
    }

    /// sign(a_n) at the reference direction.
    pub fn sign(&self, n: i64) -> i8 {
        if n.abs() <= self.m {
            self.signs[(n + self.m) as usize]
        } else if n > 0 {
            self.b_sign
        } else {
            -self.b_sign
        }
    }

    /// a_n = Re((t + n)/λ).
    pub fn a(&self, n: i64) -> f64 {
        ((self.t + n as f64) / self.lambda).re
    }
}

/// T(n): μ((t+n)/λ) or −μ(−(t+n)/λ) according to the context's sign.
pub fn mu_term_signed(n: i64, ctx: &SectorContext) -> Result<Complex64> {
    let z = (ctx.t + n as f64) / ctx.lambda;
    if z.re == 0.0 {
        return Err(Error::OnRay(format!("a_{n} = 0 at λ = {}", ctx.lambda)));
    }
    if ctx.sign(n) > 0 {
        binet_mu_continued(z)
    } else {
        Ok(-binet_mu_continued(-z)?)
    }
}

/// The instanton sum with its error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstSum {
    pub value: Complex64,
    pub tail_bound: f64,
    /// Pairs summed term by term.
    pub n_direct: i64,
}

/// Cut past which the Stirling remainder of the tail is below `tol`:
/// |R_K(z)| ≤ |c_{K+1}|·sec^{2K+2}(arg z/2)/|z|^{2K+1} with sec² ≤ 2 for Re z > 0.
fn tail_cut(t: Complex64, lambda: Complex64, tol: f64) -> f64 {
    let k = TAIL_ORDER as f64;
    let c = STIRLING[TAIL_ORDER].abs();
    let log_x = (2.0 * c * 2f64.powf(k + 1.0) / (2.0 * k)).ln() + (2.0 * k + 1.0) * lambda.norm().ln() - tol.ln();
    t.norm() + 1.0 + (log_x / (2.0 * k)).exp()
}

fn remainder_bound(t: Complex64, lambda: Complex64, n0: i64) -> f64 {
    let k = TAIL_ORDER as f64;
    let c = STIRLING[TAIL_ORDER].abs();
    let d = n0 as f64 - t.norm();
    2.0 * c * 2f64.powf(k + 1.0) * lambda.norm().powf(2.0 * k + 1.0) / (2.0 * k * d.powf(2.0 * k))
}

/// Σ_{n>n0} [μ((n+t)/Λ) − μ((n−t)/Λ)] from the truncated Stirling series.
fn stirling_tail(t: Complex64, big_lambda: Complex64, n0: i64) -> Result<(Complex64, f64)> {
    let a_plus = t + (n0 + 1) as f64;
    let a_minus = -t + (n0 + 1) as f64;
    let mut sum = digamma(a_minus)? - digamma(a_plus)?;
    sum *= big_lambda * STIRLING[0];
    let mut scale = sum.norm();
    let mut pow = big_lambda;
    for (m, c) in STIRLING.iter().enumerate().take(TAIL_ORDER).skip(1) {
        pow *= big_lambda * big_lambda;
        let s = (2 * m + 1) as u32;
        let term = pow * *c * (hurwitz_zeta(s, a_plus)? - hurwitz_zeta(s, a_minus)?);
        scale = scale.max(term.norm());
        sum += term;
    }
    // digamma values are O(log n0); their difference loses that much
    let rounding = 16.0 * f64::EPSILON * big_lambda.norm() * (n0 as f64 + 2.0).ln().max(1.0) + 4.0 * f64::EPSILON * scale;
    Ok((sum, rounding))
}

/// log 𝒳^inst_{β∨} with the accelerated tail.
pub fn log_x_inst_report(ctx: &SectorContext, budget: &Budget) -> Result<InstSum> {
    let (t, lambda) = (ctx.t, ctx.lambda);
    let cut = tail_cut(t, lambda, budget.series_tol).max(ctx.m as f64 + 1.0).ceil();
    if cut > budget.max_terms as f64 {
        return Err(Error::Budget(format!("conformal sum needs {cut} direct pairs")));
    }
    let n0 = cut as i64;
    let mut value = mu_term_signed(0, ctx)?;
    let mut abs_sum = value.norm();
    for n in 1..=n0 {
        let pair = mu_term_signed(n, ctx)? + mu_term_signed(-n, ctx)?;
        abs_sum += pair.norm();
        value += pair;
    }
    let sigma = ctx.b_sign as f64;
    let (tail, rounding) = stirling_tail(t, sigma * lambda, n0)?;
    value += sigma * tail;
    let tail_bound = remainder_bound(t, lambda, n0) + rounding + 8.0 * f64::EPSILON * abs_sum;
    Ok(InstSum { value, tail_bound, n_direct: n0 })
}

pub fn log_x_inst_beta_vee(ctx: &SectorContext, budget: &Budget) -> Result<Complex64> {
    Ok(log_x_inst_report(ctx, budget)?.value)
}

/// T(0) + Σ_{k=1}^{n} (T(k) + T(−k)) without acceleration.
pub fn paired_partial_sum(ctx: &SectorContext, n: i64) -> Result<Complex64> {
    let mut s = mu_term_signed(0, ctx)?;
    for k in 1..=n {
        s += mu_term_signed(k, ctx)? + mu_term_signed(-k, ctx)?;
    }
    Ok(s)
}

/// Σ_{k=from}^{to} T(k), the one-sided ordering.
pub fn one_sided_partial_sum(ctx: &SectorContext, from: i64, to: i64) -> Result<Complex64> {
    let mut s = Complex64::new(0.0, 0.0);
    for k in from..=to {
        s += mu_term_signed(k, ctx)?;
    }
    Ok(s)
}

/// Bound on the paired tail Σ_{k>n} from the leading pair behaviour
/// λtB₂/(t² − k²) and the B₄ correction B₄λ³/(12(t ± k)³), doubled to absorb
/// the higher orders. Meant for n past the sign pattern and well beyond |λ|.
pub fn paired_tail_bound(ctx: &SectorContext, n: i64) -> f64 {
    let (t, l) = (ctx.t.norm(), ctx.lambda.norm());
    let nf = n as f64;
    if nf <= t + l {
        return f64::INFINITY;
    }
    let lead = l * t / 6.0 * ((nf + t) / (nf - t)).ln() / (2.0 * t);
    let next = l.powi(3) / 30.0 / 12.0 / (nf - t).powi(2);
    2.0 * (lead + next)
}

/// log 𝒳_{β∨}: 2πiZ_{β∨}/λ (sheet 0) plus the instanton sum.
pub fn log_conformal_x_beta_vee(t: Complex64, lambda: Complex64, budget: &Budget) -> Result<Complex64> {
    let ctx = SectorContext::new(t, lambda, budget)?;
    Ok(2.0 * PI * I * z_beta_vee(t, 0)? / lambda + log_x_inst_beta_vee(&ctx, budget)?)
}

pub fn conformal_x_beta_vee(t: Complex64, lambda: Complex64, budget: &Budget) -> Result<Complex64> {
    Ok(log_conformal_x_beta_vee(t, lambda, budget)?.exp())
}

/// The sector formula of the direction `direction`, continued to λ term by term.
pub fn log_sector_x_beta_vee(direction: Complex64, t: Complex64, lambda: Complex64, budget: &Budget) -> Result<Complex64> {
    if (lambda / direction).re <= 0.0 {
        return Err(Error::Domain(format!("λ = {lambda} is outside the half-plane of {direction}")));
    }
    let ctx = SectorContext::with_direction(t, lambda, direction, budget)?;
    Ok(2.0 * PI * I * z_beta_vee(t, 0)? / lambda + log_x_inst_beta_vee(&ctx, budget)?)
}

/// 𝒳_{l,β∨}(λ) for the ray l through `target`: the natural value times the
/// jump factors of the rays between λ and l.
pub fn log_analytic_continuation(target: Complex64, t: Complex64, lambda: Complex64, budget: &Budget) -> Result<Complex64> {
    if target.norm() == 0.0 || (lambda / target).re <= 0.0 {
        return Err(Error::Domain(format!("λ = {lambda} is outside the half-plane of {target}")));
    }
    let natural = log_conformal_x_beta_vee(t, lambda, budget)?;
    Ok(natural + log_jump_product(t, lambda, lambda.arg(), target.arg(), budget)?)
}

pub fn analytic_continuation(target: Complex64, t: Complex64, lambda: Complex64, budget: &Budget) -> Result<Complex64> {
    Ok(log_analytic_continuation(target, t, lambda, budget)?.exp())
}

/// One measured jump across a BPS ray.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpMeasurement {
    pub ray: BpsRay,
    pub lambda: Complex64,
    /// 𝒳 of the anticlockwise side over 𝒳 of the clockwise side, both at λ.
    pub measured: Complex64,
    pub predicted: Complex64,
}

impl JumpMeasurement {
    pub fn relative_error(&self) -> f64 {
        (self.measured - self.predicted).norm() / self.predicted.norm()
    }
}

/// Jump across l_n (`Plus`) or −l_n (`Minus`) at |λ| = `radius`, measured at
/// both symmetric offsets ±ε from the ray.
pub fn measure_jump(
    t: Complex64,
    n: i64,
    family: Family,
    radius: f64,
    eps: f64,
    budget: &Budget,
) -> Result<[JumpMeasurement; 2]> {
    let sign = match family {
        Family::Plus => 1,
        Family::Minus => -1,
    };
    let ray = BpsRay::new(t, RayIndex::Finite(n), sign);
    let ccw = ray.direction * Complex64::from_polar(radius, eps);
    let cw = ray.direction * Complex64::from_polar(radius, -eps);
    let measure = |lambda: Complex64| -> Result<JumpMeasurement> {
        let hi = SectorContext::with_direction(t, lambda, ccw, budget)?;
        let lo = SectorContext::with_direction(t, lambda, cw, budget)?;
        let d = log_x_inst_beta_vee(&hi, budget)? - log_x_inst_beta_vee(&lo, budget)?;
        Ok(JumpMeasurement { ray, lambda, measured: d.exp(), predicted: jump_factor(n, t, lambda, family)? })
    };
    Ok([measure(ccw)?, measure(cw)?])
}

/// |LHS − RHS|/max(|LHS|, |RHS|) between the Binet-sum coordinate and
/// exp(2πiZ_{β∨}/λ)·Φ_{β∨}. Computed from the log difference so that the
/// common exponential never has to be formed.
pub fn conjecture_residual(t: Complex64, lambda: Complex64, budget: &Budget) -> Result<f64> {
    conjecture_residual_with(t, lambda, &RhConfig::default(), budget)
}

pub fn conjecture_residual_with(t: Complex64, lambda: Complex64, cfg: &RhConfig, budget: &Budget) -> Result<f64> {
    let ctx = SectorContext::new(t, lambda, budget)?;
    let lhs = log_x_inst_beta_vee(&ctx, budget)?;
    let rhs = log_rh_solution_phi_with(t, lambda, cfg, budget)?;
    Ok(relative_gap(lhs - rhs))
}

/// |e^d − 1|/max(1, |e^d|).
fn relative_gap(d: Complex64) -> f64 {
    // the imaginary part only matters modulo 2π
    let d = Complex64::new(d.re, (d.im + PI).rem_euclid(2.0 * PI) - PI);
    let em1 = if d.norm() < 1e-3 { d + d * d / 2.0 + d * d * d / 6.0 } else { d.exp() - 1.0 };
    em1.norm() / d.re.exp().max(1.0)
}
