//! Barnes double and triple sine functions
//! S_r(z | ω) = Γ_r(z | ω)^{−1} Γ_r(ω₁ + … + ω_r − z | ω)^{(−1)^r}
//! through their product factorisations.
//!
//! For pairwise non-real period ratios
//! log S_r(z) = (−1)^r (πi/r!) B_{r,r}(z) − Σ_k Σ_{m≥1} x_k^m / (m ∏_{j≠k}(1 − e^{2πimω_j/ω_k})),
//! x_k = e^{2πiz/ω_k}. Expanding each 1/(1 − Q^m) geometrically on the side
//! where it converges turns the m-sum into sums of log(1 − ·). A repeated
//! period (needed for G₃) produces double poles, handled by the confluent
//! formula in [`log_triple_sine_confluent`].

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::{b22, b33};
use super::polylog::li2_total;
use crate::config::Budget;
use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const POLE_TOL: f64 = 1e-13;
const LOG_TINY: f64 = -41.5; // log(1e−18)

/// log(1 − e^a), principal value, stable for large Re a.
pub(crate) fn log1m_exp(a: Complex64) -> Result<Complex64> {
    let w = a.exp();
    if a.re < -1.0 {
        // 1 − w close to 1
        let one_minus = Complex64::new(1.0, 0.0) - w;
        return Ok(if w.norm() < 1e-8 {
            -w - 0.5 * w * w - w * w * w / 3.0
        } else {
            one_minus.ln()
        });
    }
    if a.re > 30.0 {
        return Ok(a + ((-a).exp() - 1.0).ln());
    }
    let one_minus = Complex64::new(1.0, 0.0) - w;
    if one_minus.norm() < POLE_TOL {
        return Err(Error::Pole(format!("factor 1 − e^{{{a}}} vanishes")));
    }
    Ok(one_minus.ln())
}

fn ratio_is_real(a: Complex64, b: Complex64) -> bool {
    let r = a / b;
    r.im.abs() <= 1e-14 * r.norm()
}

/// Geometric expansion data for 1/(1 − e^{2πimω_j/ω_k}): first index, sign and
/// the period step that keeps |e^{2πi step/ω_k}| < 1.
fn expansion(wj: Complex64, wk: Complex64) -> (usize, f64, Complex64) {
    let q = (2.0 * PI * I * wj / wk).exp();
    if q.norm() < 1.0 {
        (0, 1.0, wj)
    } else {
        (1, -1.0, -wj)
    }
}

fn double_sine_part(z: Complex64, wj: Complex64, wk: Complex64, budget: &Budget) -> Result<Complex64> {
    let (start, sign, step) = expansion(wj, wk);
    let base = 2.0 * PI * I / wk;
    let mut sum = Complex64::new(0.0, 0.0);
    let rate = (base * step).re;
    let mut l = start;
    loop {
        let a = base * (z + step * l as f64);
        if a.re < LOG_TINY && rate < 0.0 {
            break;
        }
        sum += log1m_exp(a)?;
        l += 1;
        if l > budget.max_terms {
            return Err(Error::Budget(format!("double sine product at z = {z}")));
        }
    }
    Ok(sign * sum)
}

/// log S₂(z | ω₁, ω₂) (one branch; the exponential is single valued).
pub fn log_double_sine(z: Complex64, w1: Complex64, w2: Complex64, budget: &Budget) -> Result<Complex64> {
    if w1.norm() == 0.0 || w2.norm() == 0.0 {
        return Err(Error::Domain("periods must be nonzero".into()));
    }
    if ratio_is_real(w1, w2) {
        return Err(Error::Domain(format!("period ratio {} is real", w1 / w2)));
    }
    let head = 0.5 * PI * I * b22(z, w1, w2);
    Ok(head + double_sine_part(z, w2, w1, budget)? + double_sine_part(z, w1, w2, budget)?)
}

fn triple_part(
    z: Complex64,
    wk: Complex64,
    wa: Complex64,
    wb: Complex64,
    budget: &Budget,
) -> Result<Complex64> {
    let (sa, ga, step_a) = expansion(wa, wk);
    let (sb, gb, step_b) = expansion(wb, wk);
    let base = 2.0 * PI * I / wk;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut count = 0usize;
    let mut a = sa;
    loop {
        let lead = base * (z + step_a * a as f64 + step_b * sb as f64);
        if lead.re < LOG_TINY {
            break;
        }
        let mut b = sb;
        loop {
            let e = base * (z + step_a * a as f64 + step_b * b as f64);
            if e.re < LOG_TINY {
                break;
            }
            sum += log1m_exp(e)?;
            b += 1;
            count += 1;
            if count > budget.max_terms {
                return Err(Error::Budget(format!("triple sine product at z = {z}")));
            }
        }
        a += 1;
    }
    Ok(ga * gb * sum)
}

/// log S₃(z | ω₁, ω₂, ω₃) for pairwise non-real ratios, or with one repeated period.
pub fn log_triple_sine(z: Complex64, w: [Complex64; 3], budget: &Budget) -> Result<Complex64> {
    let (head, tail) = log_triple_sine_split(z, w, budget)?;
    Ok(head + tail)
}

/// Splits log S₃ into −(πi/6)B_{3,3}(z) and the product part.
pub(crate) fn log_triple_sine_split(
    z: Complex64,
    w: [Complex64; 3],
    budget: &Budget,
) -> Result<(Complex64, Complex64)> {
    if w.iter().any(|x| x.norm() == 0.0) {
        return Err(Error::Domain("periods must be nonzero".into()));
    }
    let same = |a: Complex64, b: Complex64| (a - b).norm() <= 1e-14 * a.norm().max(b.norm());
    let head = -(PI * I / 6.0) * b33(z, w[0], w[1], w[2]);
    let pairs = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
    for (i, j, k) in pairs {
        if same(w[i], w[j]) {
            if same(w[i], w[k]) {
                return Err(Error::Domain("three equal periods are not supported".into()));
            }
            let tail = confluent_tail(z, w[i], w[k], budget)?;
            return Ok((head, tail));
        }
    }
    for (i, j, _) in pairs {
        if ratio_is_real(w[i], w[j]) {
            return Err(Error::Domain(format!("period ratio {} is real", w[i] / w[j])));
        }
    }
    let tail = triple_part(z, w[0], w[1], w[2], budget)?
        + triple_part(z, w[1], w[0], w[2], budget)?
        + triple_part(z, w[2], w[0], w[1], budget)?;
    Ok((head, tail))
}

/// log S₃(z | a, a, b).
pub fn log_triple_sine_confluent(z: Complex64, a: Complex64, b: Complex64, budget: &Budget) -> Result<Complex64> {
    let (head, tail) = log_triple_sine_split(z, [a, a, b], budget)?;
    Ok(head + tail)
}

fn confluent_tail(z: Complex64, a: Complex64, b: Complex64, budget: &Budget) -> Result<Complex64> {
    if ratio_is_real(a, b) {
        return Err(Error::Domain(format!("period ratio {} is real", a / b)));
    }
    let two_pi_i = 2.0 * PI * I;
    let mut sum = Complex64::new(0.0, 0.0);

    // simple poles from the period b
    let q = (two_pi_i * a / b).exp();
    let (shift, dir) = if q.norm() < 1.0 { (0.0, 1.0) } else { (2.0, -1.0) };
    let mut k = 0usize;
    loop {
        let e = two_pi_i * (z + dir * (k as f64 + shift) * a) / b;
        let weight = (k + 1) as f64;
        if e.re + weight.ln() < LOG_TINY {
            break;
        }
        sum += weight * log1m_exp(e)?;
        k += 1;
        if k > budget.max_terms {
            return Err(Error::Budget(format!("confluent triple sine at z = {z}")));
        }
    }

    // double poles from the repeated period a
    let p = (two_pi_i * b / a).exp();
    let (first, dir, sign) = if p.norm() < 1.0 { (0usize, 1.0, -1.0) } else { (1usize, -1.0, 1.0) };
    let mut k = first;
    loop {
        let ell = two_pi_i * (z + dir * k as f64 * b) / a;
        if ell.re + (1.0 + ell.norm()).ln() < LOG_TINY {
            break;
        }
        let w = ell.exp();
        let l1 = log1m_exp(ell)?;
        let li = if ell.re < -1.0 && w.norm() < 1e-8 {
            w + 0.25 * w * w
        } else {
            li2_total(w)
        };
        sum += sign * ((li + ell * l1) / two_pi_i - l1);
        k += 1;
        if k > budget.max_terms {
            return Err(Error::Budget(format!("confluent triple sine at z = {z}")));
        }
    }
    Ok(sum)
}

/// sin_r(z | ω) for r = 2, 3.
pub fn multiple_sine(z: Complex64, omegas: &[Complex64], budget: &Budget) -> Result<Complex64> {
    let log = match omegas {
        [w1, w2] => log_double_sine(z, *w1, *w2, budget)?,
        [w1, w2, w3] => log_triple_sine(z, [*w1, *w2, *w3], budget)?,
        _ => return Err(Error::Domain(format!("rank {} not supported", omegas.len()))),
    };
    Ok(log.exp())
}
