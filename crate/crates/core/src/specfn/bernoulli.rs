//! Multiple Bernoulli polynomials B_{r,n}(z | ω₁, …, ω_r), defined by
//! x^r e^{zx} / ∏(e^{ω_i x} − 1) = Σ_n B_{r,n}(z|ω) x^n / n!.
//!
//! Each factor x/(e^{ωx} − 1) = Σ_k B_k ω^{k−1} x^k / k! has exact rational
//! Bernoulli coefficients; the generating function is the truncated Cauchy
//! product of those series with e^{zx}.

use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::Ratio;

use crate::error::{Error, Result};

const MAX_INDEX: usize = 30;

fn binomial(n: i128, k: i128) -> i128 {
    let mut out = 1i128;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Exact Bernoulli numbers B_0..=B_30 with B_1 = −1/2.
pub fn bernoulli_numbers() -> &'static [Ratio<i128>] {
    static TABLE: OnceLock<Vec<Ratio<i128>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut b: Vec<Ratio<i128>> = Vec::with_capacity(MAX_INDEX + 1);
        b.push(Ratio::from_integer(1));
        for m in 1..=MAX_INDEX as i128 {
            let mut acc = Ratio::from_integer(0);
            for (k, bk) in b.iter().enumerate() {
                acc += *bk * Ratio::from_integer(binomial(m + 1, k as i128));
            }
            b.push(-acc / Ratio::from_integer(m + 1));
        }
        b
    })
}

fn ratio_to_f64(r: &Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// B_{r,n}(z | ω).
pub fn gen_bernoulli_poly(n: usize, z: Complex64, omegas: &[Complex64]) -> Result<Complex64> {
    if omegas.is_empty() {
        return Err(Error::Domain("at least one period is required".into()));
    }
    if omegas.iter().any(|w| w.norm() == 0.0) {
        return Err(Error::Domain("periods must be nonzero".into()));
    }
    if n > MAX_INDEX {
        return Err(Error::Domain(format!("order {n} above {MAX_INDEX}")));
    }
    let bern = bernoulli_numbers();
    let mut factorial = vec![1.0f64; n + 1];
    for k in 1..=n {
        factorial[k] = factorial[k - 1] * k as f64;
    }
    // series of e^{zx}
    let mut series: Vec<Complex64> = (0..=n)
        .map(|j| z.powu(j as u32) / factorial[j])
        .collect();
    for w in omegas {
        let factor: Vec<Complex64> = (0..=n)
            .map(|k| w.powi(k as i32 - 1) * (ratio_to_f64(&bern[k]) / factorial[k]))
            .collect();
        let mut product = vec![Complex64::new(0.0, 0.0); n + 1];
        for (i, a) in series.iter().enumerate() {
            for (j, b) in factor.iter().enumerate().take(n + 1 - i) {
                product[i + j] += a * b;
            }
        }
        series = product;
    }
    Ok(series[n] * factorial[n])
}

/// B_{2,2}(z | ω₁, ω₂) in closed form.
pub fn b22(z: Complex64, w1: Complex64, w2: Complex64) -> Complex64 {
    let p = w1 * w2;
    z * z / p - z * (w1 + w2) / p + (w1 * w1 + w2 * w2 + 3.0 * p) / (6.0 * p)
}

/// B_{3,3}(z | ω₁, ω₂, ω₃) in closed form.
pub fn b33(z: Complex64, w1: Complex64, w2: Complex64, w3: Complex64) -> Complex64 {
    let p = w1 * w2 * w3;
    let s1 = w1 + w2 + w3;
    let s2 = w1 * w2 + w2 * w3 + w3 * w1;
    (z * z * z - 1.5 * s1 * z * z + 0.5 * (s1 * s1 + s2) * z - 0.25 * s1 * s2) / p
}
