//! Reference values computed by routes that share no code with `conifold-hk`:
//! double-exponential quadrature of integral representations, direct series
//! and brute-force Bessel sums. Slow; intended for tests only.

pub mod de;
pub mod special;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use special::{
    barnes_coefficients, bernoulli_series, bessel_k_integral, binet_integral, exp_int_integral, exp_int_series,
    log_barnes_gamma, log_multiple_sine, polylog_integral,
};

/// −(λ/πi)∫ dλ′/(λ′² − λ²)·log(1 − e^{2πi(t+n)/λ′}) along λ′ = −i(t+n)s, s > 0.
pub fn lemma_contour(n: i64, t: Complex64, lambda: Complex64) -> Complex64 {
    let w = t + n as f64;
    let i = Complex64::new(0.0, 1.0);
    let f = |s: f64| {
        if s == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let lp = -i * w * s;
        let dl = -i * w;
        let e = (2.0 * PI * i * w / lp).exp();
        let lg = if e.norm() < 1e-8 { -e - 0.5 * e * e } else { (Complex64::new(1.0, 0.0) - e).ln() };
        dl / (lp * lp - lambda * lambda) * lg
    };
    -(lambda / (PI * i)) * de::half_line(f, 0.0, 1e-14).value
}

/// V_n = (1/π)Σ_{m>0} cos(mθ)K₀(2πRm|t − n|) with θ = θ_β − nθ_δ, by brute force.
pub fn v_sum(n: i64, t: Complex64, theta_beta: f64, theta_delta: f64, r: f64) -> f64 {
    let d = (t - n as f64).norm();
    let theta = theta_beta - n as f64 * theta_delta;
    let mut s = 0.0;
    for m in 1..200 {
        let x = 2.0 * PI * r * m as f64 * d;
        if x > 700.0 {
            break;
        }
        s += (m as f64 * theta).cos() * bessel_k_integral(0, x);
    }
    s / PI
}

/// c_n = −(1/4π)Σ_{m≠0} sign(m)e^{imθ}|t − n|K₁(2πR|m||t − n|), by brute force.
pub fn c_sum(n: i64, t: Complex64, theta_beta: f64, theta_delta: f64, r: f64) -> Complex64 {
    let d = (t - n as f64).norm();
    let theta = theta_beta - n as f64 * theta_delta;
    let mut s = Complex64::new(0.0, 0.0);
    for m in 1..200 {
        let x = 2.0 * PI * r * m as f64 * d;
        if x > 700.0 {
            break;
        }
        let k1 = bessel_k_integral(1, x);
        let phase = Complex64::new(0.0, m as f64 * theta).exp() - Complex64::new(0.0, -(m as f64) * theta).exp();
        s += phase * d * k1;
    }
    -s / (4.0 * PI)
}

/// Σ_{0<|n|≤n_max} V_n at t = 0 and the given angles.
pub fn v_sum_at_origin(theta_beta: f64, theta_delta: f64, n_max: i64) -> f64 {
    (1..=n_max)
        .map(|n| {
            v_sum(n, Complex64::new(0.0, 0.0), theta_beta, theta_delta, 1.0)
                + v_sum(-n, Complex64::new(0.0, 0.0), theta_beta, theta_delta, 1.0)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_matches_binet_for_positive_real_part() {
        let (t, lambda) = (Complex64::new(0.3, 0.8), Complex64::new(1.0, 0.0));
        let z = t / lambda;
        let a = lemma_contour(0, t, lambda);
        let b = binet_integral(z);
        assert!((a - b).norm() < 1e-12, "{a} {b}");
    }

    #[test]
    fn c_sum_vanishes_on_lagrangian() {
        assert!(c_sum(2, Complex64::new(0.1, 0.4), 0.0, 0.0, 1.0).norm() == 0.0);
    }
}
