//! Complex log-Gamma and Binet's function μ(z) = log Γ(z) − (z − ½)log z + z − ½ log 2π.
//!
//! μ is evaluated by upward recurrence μ(z) = μ(z + 1) + (z + ½)log(1 + 1/z) − 1
//! until the Stirling series is accurate. The recurrence keeps the analytic
//! branch on ℂ \ (−∞, 0], so the same routine serves the continuation of μ into
//! Re z < 0 that the sector bookkeeping needs.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// B_{2m} / ((2m − 1)·2m), m = 1..
pub const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

const ASYMPTOTIC_RADIUS: f64 = 17.0;

fn stirling_tail(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut sum = Complex64::new(0.0, 0.0);
    for c in STIRLING.iter().rev() {
        sum = sum * inv2 + *c;
    }
    sum * inv
}

/// (w + ½)·log(1 + 1/w) − 1, by its Taylor series in 1/w once |w| ≥ 4.
fn recurrence_step(w: Complex64) -> Complex64 {
    if w.norm() < 4.0 {
        return (w + 0.5) * (w.inv() + 1.0).ln() - 1.0;
    }
    let u = -w.inv();
    let mut pow = u;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 2..40 {
        pow *= u;
        let kf = k as f64;
        let term = pow * ((kf - 1.0) / (2.0 * kf * (kf + 1.0)));
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

fn on_negative_axis(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0
}

/// μ(z) continued analytically to ℂ \ (−∞, 0].
pub fn binet_mu_continued(z: Complex64) -> Result<Complex64> {
    if on_negative_axis(z) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("Binet function undefined at {z}")));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut w = z;
    let mut steps = 0usize;
    while w.re < 0.0 || w.norm() < ASYMPTOTIC_RADIUS {
        acc += recurrence_step(w);
        w += 1.0;
        steps += 1;
        if steps > 10_000_000 {
            return Err(Error::Budget(format!("Binet recurrence from {z}")));
        }
    }
    Ok(acc + stirling_tail(w))
}

/// μ(z) for Re z > 0.
pub fn binet_mu(z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!("binetMu needs Re z > 0, got {z}")));
    }
    binet_mu_continued(z)
}

/// Principal log Γ(z), analytic on ℂ \ (−∞, 0].
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    let mu = binet_mu_continued(z)?;
    Ok(mu + (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln())
}

/// Truncated Stirling series for μ with the size of the first omitted term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticValue {
    pub value: Complex64,
    pub error_estimate: f64,
}

/// Σ_{m ≤ order} B_{2m}/((2m−1)2m z^{2m−1}).
pub fn binet_mu_asymptotic(z: Complex64, order: usize) -> Result<AsymptoticValue> {
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!("asymptotic Binet series needs Re z > 0, got {z}")));
    }
    if order == 0 || order >= STIRLING.len() {
        return Err(Error::Domain(format!("order must lie in 1..{}", STIRLING.len() - 1)));
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut value = Complex64::new(0.0, 0.0);
    let mut last = f64::INFINITY;
    for c in STIRLING.iter().take(order) {
        let term = pow * *c;
        if term.norm() > last {
            return Err(Error::Divergence(format!("terms grow at |z| = {}", z.norm())));
        }
        last = term.norm();
        value += term;
        pow *= inv2;
    }
    let omitted = (pow * STIRLING[order]).norm();
    if omitted > last {
        return Err(Error::Divergence(format!("first omitted term grows at |z| = {}", z.norm())));
    }
    Ok(AsymptoticValue { value, error_estimate: omitted })
}

/// B_{2m} for m = 1..=10, recovered from the Stirling coefficients.
fn bernoulli_even(m: usize) -> f64 {
    let k = 2.0 * m as f64;
    STIRLING[m - 1] * (k - 1.0) * k
}

/// Shift w upwards by whole steps until the asymptotic expansions are accurate.
fn shift_count(z: Complex64) -> usize {
    let mut w = z;
    let mut k = 0;
    while w.re < 0.0 || w.norm() < ASYMPTOTIC_RADIUS {
        w += 1.0;
        k += 1;
    }
    k
}

/// Digamma ψ(z) = Γ′(z)/Γ(z) on ℂ \ (−∞, 0].
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if on_negative_axis(z) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("digamma undefined at {z}")));
    }
    let k = shift_count(z);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..k {
        acc -= (z + j as f64).inv();
    }
    let w = z + k as f64;
    let inv2 = (w * w).inv();
    let mut pow = inv2;
    let mut series = w.ln() - 0.5 * w.inv();
    for m in 1..STIRLING.len() {
        series -= pow * (bernoulli_even(m) / (2.0 * m as f64));
        pow *= inv2;
    }
    Ok(acc + series)
}

/// Hurwitz zeta ζ(s, a) = Σ_{k≥0} (a + k)^{−s} for integer s ≥ 2 and Re a > 0.
pub fn hurwitz_zeta(s: u32, a: Complex64) -> Result<Complex64> {
    if s < 2 {
        return Err(Error::Domain("Hurwitz zeta needs s ≥ 2".into()));
    }
    if !(a.re > 0.0) {
        return Err(Error::Domain(format!("Hurwitz zeta needs Re a > 0, got {a}")));
    }
    let k = shift_count(a);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..k {
        acc += (a + j as f64).powi(-(s as i32));
    }
    // Euler–Maclaurin at w = a + k
    let w = a + k as f64;
    let sf = s as f64;
    let inv = w.inv();
    let lead = inv.powi(s as i32);
    let mut series = w * lead / (sf - 1.0) + 0.5 * lead;
    // term m: B_{2m}/(2m)! · s(s+1)…(s+2m−2) · w^{−s−2m+1}
    let mut rising = sf;
    let mut fact = 2.0;
    let mut pow = lead * inv;
    for m in 1..STIRLING.len() {
        series += pow * (bernoulli_even(m) * rising / fact);
        let k2 = 2.0 * m as f64;
        rising *= (sf + k2 - 1.0) * (sf + k2);
        fact *= (k2 + 1.0) * (k2 + 2.0);
        pow *= inv * inv;
    }
    Ok(acc + series)
}
