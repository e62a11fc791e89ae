//! Integral and series representations of the special functions, written
//! independently of the production kernels.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::de::{half_line, trapezoid_half_line};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// log(1 − e^{−a}) for Re a > 0.
fn log1m_exp_neg(a: Complex64) -> Complex64 {
    let w = (-a).exp();
    if w.norm() < 1e-6 {
        -w - 0.5 * w * w - w * w * w / 3.0
    } else {
        (c(1.0, 0.0) - w).ln()
    }
}

/// Binet's function from −(1/π)∫₀^∞ log(1 − e^{−2πz/s}) ds/(s² + 1), Re z > 0.
pub fn binet_integral(z: Complex64) -> Complex64 {
    let f = |s: f64| {
        if s == 0.0 {
            return c(0.0, 0.0);
        }
        log1m_exp_neg(2.0 * PI * z / s) / (s * s + 1.0)
    };
    -half_line(f, 0.0, 1e-14).value / PI
}

/// K_ν(x) = ∫₀^∞ e^{−x cosh s} cosh(νs) ds.
pub fn bessel_k_integral(nu: u32, x: f64) -> f64 {
    trapezoid_half_line(|s| (-x * s.cosh()).exp() * (nu as f64 * s).cosh(), 1e-15)
}

/// E₁(x) = ∫₁^∞ e^{−xu}/u du = e^{−x}∫₀^∞ e^{−xu}/(1 + u) du.
pub fn exp_int_integral(x: f64) -> f64 {
    (-x).exp() * half_line(|u| c((-x * u).exp() / (1.0 + u), 0.0), 0.0, 1e-15).value.re
}

/// E₁(x) = −γ − log x + Σ (−1)^{n+1} xⁿ/(n·n!).
pub fn exp_int_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for n in 1..200 {
        term *= x / n as f64;
        let add = if n % 2 == 1 { term / n as f64 } else { -term / n as f64 };
        sum += add;
        if add.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - x.ln() + sum
}

/// Li_s(z) = (z/Γ(s))∫₀^∞ u^{s−1}/(e^u − z) du for s = 2, 3 and z ∉ [1, ∞).
pub fn polylog_integral(s: u32, z: Complex64) -> Complex64 {
    let gamma = if s == 2 { 1.0 } else { 2.0 };
    let f = |u: f64| {
        if u > 700.0 {
            return c(0.0, 0.0);
        }
        c(u.powi(s as i32 - 1), 0.0) / (c(u.exp(), 0.0) - z)
    };
    z * half_line(f, 0.0, 1e-14).value / gamma
}

/// Taylor coefficients of Π_i x/(1 − e^{−ω_i x}) · e^{−zx} to order `order`,
/// by numeric power-series division.
pub fn barnes_coefficients(z: Complex64, omegas: &[Complex64], order: usize) -> Vec<Complex64> {
    let n = order + 1;
    let mut fact = vec![1.0; n + 2];
    for k in 1..n + 2 {
        fact[k] = fact[k - 1] * k as f64;
    }
    let mut num: Vec<Complex64> = (0..n).map(|k| (-z).powu(k as u32) / fact[k]).collect();
    for &w in omegas {
        // (1 − e^{−ωx})/x = Σ_k −(−ω)^{k+1} x^k/(k+1)!
        let den: Vec<Complex64> = (0..n).map(|k| -(-w).powu(k as u32 + 1) / fact[k + 1]).collect();
        let mut q = vec![c(0.0, 0.0); n];
        for k in 0..n {
            let mut acc = num[k];
            for j in 0..k {
                acc -= q[j] * den[k - j];
            }
            q[k] = acc / den[0];
        }
        num = q;
    }
    num
}

/// B_{r,n}(z | ω) from x^r e^{zx}/Π(e^{ω_i x} − 1) by series division.
pub fn bernoulli_series(n: usize, z: Complex64, omegas: &[Complex64]) -> Complex64 {
    // x/(e^{ωx} − 1) expansion coefficients relate to the e^{−·} form by x → −x
    let coeffs = barnes_coefficients(-z, &omegas.iter().map(|w| -*w).collect::<Vec<_>>(), n);
    let sign = if omegas.len() % 2 == 0 { 1.0 } else { -1.0 };
    let mut fact = 1.0;
    for k in 1..=n {
        fact *= k as f64;
    }
    sign * coeffs[n] * fact
}

fn arg_window(points: &[Complex64]) -> Option<f64> {
    // a direction φ with Re(p e^{−iφ}) > 0 for every p, chosen mid-window
    let base = points[0].arg();
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for p in points {
        let mut a = p.arg() - base;
        while a > PI {
            a -= 2.0 * PI;
        }
        while a <= -PI {
            a += 2.0 * PI;
        }
        lo = lo.max(a - 0.5 * PI);
        hi = hi.min(a + 0.5 * PI);
    }
    (hi - lo > 1e-3).then(|| base + 0.5 * (lo + hi))
}

/// Zeta-regularised log Γ_r(z | ω) from the Barnes integral along the ray
/// t = e^{−iφ}u, u > 0, where every exponential in the integrand decays.
pub fn log_barnes_gamma(z: Complex64, omegas: &[Complex64], phi: f64) -> Complex64 {
    let r = omegas.len();
    let rot = c(0.0, -phi).exp();
    let zr = z * rot;
    let wr: Vec<Complex64> = omegas.iter().map(|w| *w * rot).collect();
    let wmax = wr.iter().map(|w| w.norm()).fold(0.0, f64::max);
    let u0 = (PI / wmax).min(1.0);
    let order = 60;
    let coeffs = barnes_coefficients(zr, &wr, order);

    // ∫₀^{u0} (g − head)/u du termwise, head = Σ_{n≤r} c_n u^{n−r}
    let mut sum = c(0.0, 0.0);
    for (n, cn) in coeffs.iter().enumerate().skip(r + 1) {
        let k = (n - r) as i32;
        let term = *cn * u0.powi(k) / k as f64;
        sum += term;
        if term.norm() < 1e-18 * sum.norm() && n > r + 8 {
            break;
        }
    }
    for (n, cn) in coeffs.iter().enumerate().take(r) {
        let k = n as i32 - r as i32;
        sum += *cn * u0.powi(k) / k as f64;
    }
    let c0 = coeffs[r];
    sum += c0 * u0.ln();
    let g = |u: f64| {
        let mut den = c(1.0, 0.0);
        for w in &wr {
            den *= c(1.0, 0.0) - (-*w * u).exp();
        }
        (-zr * u).exp() / den / u
    };
    sum += half_line(|x| g(u0 + x), 0.0, 1e-14).value;
    sum + EULER_GAMMA * c0 - c(0.0, phi) * c0
}

/// log S_r(z | ω) = −log Γ_r(z) + (−1)^r log Γ_r(Σω − z), r = 2, 3.
/// Returns None when no common decay direction exists.
pub fn log_multiple_sine(z: Complex64, omegas: &[Complex64]) -> Option<Complex64> {
    let total: Complex64 = omegas.iter().sum();
    let mut pts: Vec<Complex64> = omegas.to_vec();
    pts.push(z);
    pts.push(total - z);
    let phi = arg_window(&pts)?;
    let a = log_barnes_gamma(z, omegas, phi);
    let b = log_barnes_gamma(total - z, omegas, phi);
    Some(if omegas.len() % 2 == 0 { b - a } else { -a - b })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binet_at_one() {
        let v = binet_integral(c(1.0, 0.0));
        assert!((v.re - (1.0 - 0.5 * (2.0 * PI).ln())).abs() < 1e-13);
    }

    #[test]
    fn bessel_and_e1() {
        assert!((bessel_k_integral(0, 1.0) - 0.421_024_438_240_708_3).abs() < 1e-15);
        assert!((exp_int_integral(1.0) - 0.219_383_934_395_520_3).abs() < 1e-15);
        assert!((exp_int_series(1.0) - 0.219_383_934_395_520_3).abs() < 1e-14);
    }

    #[test]
    fn barnes_gamma_one_period() {
        // Γ₁(z | 1) = Γ(z)/√(2π)
        let z = c(2.5, 0.0);
        let v = log_barnes_gamma(z, &[c(1.0, 0.0)], 0.0);
        let expected = (PI.sqrt() * 0.75).ln() - 0.5 * (2.0 * PI).ln();
        assert!((v.re - expected).abs() < 1e-12, "{v}");
    }

    #[test]
    fn self_dual_point() {
        let v = log_multiple_sine(c(0.5, 0.5), &[c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert!(v.norm() < 1e-12, "{v}");
    }

    #[test]
    fn bernoulli_low_orders() {
        let v = bernoulli_series(2, c(0.5, 0.0), &[c(1.0, 0.0), c(1.0, 0.0)]);
        assert!((v - c(1.0 / 12.0, 0.0)).norm() < 1e-14);
        let v = bernoulli_series(0, c(0.3, 0.0), &[c(1.0, 0.0), c(1.0, 0.0)]);
        assert!((v - c(1.0, 0.0)).norm() < 1e-14);
    }
}
