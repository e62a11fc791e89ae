//! Dilogarithm and trilogarithm on the principal sheet (cut along [1, ∞)).
//!
//! |z| ≤ 1/2 uses the defining series, |z| ≥ 2 the inversion relations and the
//! annulus in between the expansion in w = log z, which converges for |w| < 2π.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Which boundary value to take on the cut (1, ∞).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Above,
    Below,
}

const ZETA2: f64 = PI * PI / 6.0;
const ZETA3: f64 = 1.202_056_903_159_594_285_399_738_161_511_449_99;
const TERMS: usize = 90;

fn zeta_even(two_j: usize) -> f64 {
    // ζ(2j) for j ≥ 1: partial sum plus Euler–Maclaurin tail.
    let s = two_j as f64;
    let mut sum = 0.0;
    let n_max = 60usize;
    for n in (1..=n_max).rev() {
        sum += (n as f64).powf(-s);
    }
    let x = n_max as f64;
    sum + x.powf(1.0 - s) / (s - 1.0) - 0.5 * x.powf(-s) + s * x.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * x.powf(-s - 3.0) / 720.0
}

/// Taylor coefficients c_k = ζ(s − k)/k! of Li_s(e^w) for k ≠ s − 1.
fn log_series_coeffs(s: usize) -> &'static [f64; TERMS] {
    static TABLES: OnceLock<[[f64; TERMS]; 2]> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        let mut out = [[0.0; TERMS]; 2];
        for (slot, s) in [2usize, 3].iter().enumerate() {
            let mut fact = 1.0;
            for k in 0..TERMS {
                if k > 0 {
                    fact *= k as f64;
                }
                let arg = *s as i64 - k as i64;
                let zeta = match arg {
                    3 => ZETA3,
                    2 => ZETA2,
                    1 => 0.0,
                    0 => -0.5,
                    a if a < 0 && (-a) % 2 == 0 => 0.0,
                    a => {
                        // ζ(1 − 2j) = (−1)^j 2 (2j − 1)! ζ(2j) / (2π)^{2j}
                        let j = ((1 - a) / 2) as usize;
                        let mut v = 2.0 * zeta_even(2 * j);
                        let mut f = 1.0;
                        for i in 1..(2 * j) {
                            f *= i as f64;
                        }
                        v *= f / (2.0 * PI).powi(2 * j as i32);
                        if j % 2 == 1 {
                            -v
                        } else {
                            v
                        }
                    }
                };
                out[slot][k] = zeta / fact;
            }
        }
        out
    });
    &tables[s - 2]
}

fn direct_series(s: i32, z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut pow = z;
    for k in 1..200 {
        let term = pow / (k as f64).powi(s);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
        pow *= z;
    }
    sum
}

/// Expansion around z = 1 given w = log z and the value of log(−w).
fn log_series(s: usize, w: Complex64, log_minus_w: Complex64) -> Complex64 {
    let coeffs = log_series_coeffs(s);
    let harmonic = if s == 2 { 1.0 } else { 1.5 };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut pow = Complex64::new(1.0, 0.0);
    let mut fact = 1.0;
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            pow *= w;
            fact *= k as f64;
        }
        let term = if k == s - 1 {
            pow / fact * (harmonic - log_minus_w)
        } else {
            pow * *c
        };
        sum += term;
        if k > s + 4 && *c != 0.0 && term.norm() <= 1e-18 * sum.norm().max(1e-300) {
            break;
        }
    }
    sum
}

fn on_cut(z: Complex64) -> bool {
    z.im == 0.0 && z.re > 1.0
}

fn polylog(s: usize, z: Complex64, side: Option<Side>) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("non-finite polylog argument {z}")));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(z);
    }
    if z == Complex64::new(1.0, 0.0) {
        return Ok(Complex64::new(if s == 2 { ZETA2 } else { ZETA3 }, 0.0));
    }
    let cut = on_cut(z);
    if cut && side.is_none() {
        return Err(Error::BranchCut(format!("Li_{s}({}) needs a side", z.re)));
    }
    // log(−z) and log(−w) with the boundary side made explicit on the cut.
    let log_minus = |u: Complex64, above: bool| -> Complex64 {
        if u.im == 0.0 && u.re > 0.0 {
            Complex64::new(u.re.ln(), if above { -PI } else { PI })
        } else {
            (-u).ln()
        }
    };
    let above = matches!(side, Some(Side::Above));
    let r = z.norm();
    if r <= 0.5 {
        return Ok(direct_series(s as i32, z));
    }
    if r >= 2.0 {
        let inv = direct_series(s as i32, z.inv());
        let l = if cut { log_minus(z, above) } else { (-z).ln() };
        return Ok(if s == 2 {
            -ZETA2 - 0.5 * l * l - inv
        } else {
            inv - ZETA2 * l - l * l * l / 6.0
        });
    }
    let w = if cut { Complex64::new(z.re.ln(), 0.0) } else { z.ln() };
    let lmw = if cut { log_minus(w, above) } else { (-w).ln() };
    Ok(log_series(s, w, lmw))
}

/// Principal dilogarithm. Errors on the open cut (1, ∞).
pub fn li2(z: Complex64) -> Result<Complex64> {
    polylog(2, z, None)
}

/// Principal trilogarithm. Errors on the open cut (1, ∞).
pub fn li3(z: Complex64) -> Result<Complex64> {
    polylog(3, z, None)
}

/// Dilogarithm with an explicit boundary side for arguments on the cut.
pub fn li2_side(z: Complex64, side: Side) -> Result<Complex64> {
    polylog(2, z, Some(side))
}

pub fn li3_side(z: Complex64, side: Side) -> Result<Complex64> {
    polylog(3, z, Some(side))
}

/// Dilogarithm that never fails on the cut: it takes the boundary value from
/// below, which is the one that pairs with the principal value of log(1 − z).
pub(crate) fn li2_total(z: Complex64) -> Complex64 {
    polylog(2, z, Some(Side::Below)).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spot_values() {
        assert_eq!(li2(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!((li2(c(0.5, 0.0)).unwrap().re - 0.582_240_526_465_012_5).abs() < 1e-15);
        assert!((li3(c(1.0, 0.0)).unwrap().re - ZETA3).abs() < 1e-15);
        // Li2(−1) = −π²/12
        assert!((li2(c(-1.0, 0.0)).unwrap().re + PI * PI / 12.0).abs() < 1e-14);
    }

    #[test]
    fn cut_needs_side() {
        assert!(matches!(li2(c(3.0, 0.0)), Err(Error::BranchCut(_))));
        let a = li2_side(c(3.0, 0.0), Side::Above).unwrap();
        let b = li2_side(c(3.0, 0.0), Side::Below).unwrap();
        assert!((a.im - PI * 3f64.ln()).abs() < 1e-13);
        assert!((a - b.conj()).norm() < 1e-13);
        let near = li2(c(3.0, 1e-13)).unwrap();
        assert!((near - a).norm() < 1e-11);
        let a3 = li3_side(c(1.5, 0.0), Side::Above).unwrap();
        assert!((a3.im - 0.5 * PI * 1.5f64.ln().powi(2)).abs() < 1e-13);
        assert!((li3(c(1.5, -1e-14)).unwrap() - a3.conj()).norm() < 1e-11);
    }

    #[test]
    fn regions_agree_on_their_seams() {
        for &(re, im) in &[(0.5, 0.0001), (-0.3, 0.4), (1.4, 1.4), (-1.99, 0.2), (0.0, 2.0)] {
            let z = c(re, im);
            for s in [2usize, 3] {
                let series = if z.norm() < 1.0 { direct_series(s as i32, z) } else { continue };
                let annulus = log_series(s, z.ln(), (-z.ln()).ln());
                assert!((series - annulus).norm() < 1e-13, "s={s} z={z}");
            }
        }
        // inversion against annulus at |z| = 2
        let z = c(0.0, 2.0);
        let inv = polylog(2, z, None).unwrap();
        let ann = log_series(2, z.ln(), (-z.ln()).ln());
        assert!((inv - ann).norm() < 1e-13);
        let inv = polylog(3, z, None).unwrap();
        let ann = log_series(3, z.ln(), (-z.ln()).ln());
        assert!((inv - ann).norm() < 1e-13);
    }
}
