//! Modified Bessel functions K₀, K₁ of real positive argument.
//!
//! The primitive is the scaled value e^x K_ν(x): power series for x ≤ 2 and
//! Steed's continued fraction (Temme's CF2) above.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Zero,
    One,
}

impl TryFrom<u32> for Order {
    type Error = Error;
    fn try_from(nu: u32) -> Result<Self> {
        match nu {
            0 => Ok(Order::Zero),
            1 => Ok(Order::One),
            _ => Err(Error::Domain(format!("Bessel order {nu} not supported"))),
        }
    }
}

fn small_argument(x: f64) -> (f64, f64) {
    let y = 0.25 * x * x;
    let ln_half = (0.5 * x).ln();
    // K₀
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut i0 = 1.0;
    let mut k0_sum = 0.0;
    // K₁
    let mut term1 = 1.0; // y^k/(k!(k+1)!)
    let mut i1_sum = 1.0;
    let mut k1_sum = (-EULER_GAMMA) + (1.0 - EULER_GAMMA);
    for k in 1..60 {
        let kf = k as f64;
        term *= y / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        k0_sum += harmonic * term;
        term1 *= y / (kf * (kf + 1.0));
        i1_sum += term1;
        let psi_sum = (harmonic - EULER_GAMMA) + (harmonic + 1.0 / (kf + 1.0) - EULER_GAMMA);
        k1_sum += psi_sum * term1;
        if term < 1e-18 * i0 && term1 < 1e-18 {
            break;
        }
    }
    let k0 = -(ln_half + EULER_GAMMA) * i0 + k0_sum;
    let i1 = 0.5 * x * i1_sum;
    let k1 = 1.0 / x + ln_half * i1 - 0.25 * x * k1_sum;
    (k0, k1)
}

fn steed(x: f64) -> (f64, f64) {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

/// e^x K₀(x) and e^x K₁(x).
pub fn bessel_k01_scaled(x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("Bessel K needs x > 0, got {x}")));
    }
    if x <= 2.0 {
        let (k0, k1) = small_argument(x);
        let e = x.exp();
        Ok((k0 * e, k1 * e))
    } else {
        Ok(steed(x))
    }
}

/// e^x K_ν(x).
pub fn bessel_k_scaled(order: Order, x: f64) -> Result<f64> {
    let (k0, k1) = bessel_k01_scaled(x)?;
    Ok(match order {
        Order::Zero => k0,
        Order::One => k1,
    })
}

/// K_ν(x); underflows gracefully to 0 for very large x.
pub fn bessel_k(order: Order, x: f64) -> Result<f64> {
    Ok(bessel_k_scaled(order, x)? * (-x).exp())
}

/// Upper bound for K_ν(x) used in tail estimates. Twice the leading
/// asymptotic envelope √(π/2x)e^{−x}(1 + 1/x), which dominates both orders.
pub fn bessel_k_bound(x: f64) -> f64 {
    2.0 * (PI / (2.0 * x)).sqrt() * (-x).exp() * (1.0 + 1.0 / x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        // frozen from the quadrature oracle ∫₀^∞ e^{−x cosh s} cosh(νs) ds
        assert!((bessel_k(Order::Zero, 1.0).unwrap() - 0.421_024_438_240_708_3).abs() < 1e-15);
        assert!((bessel_k(Order::One, 1.0).unwrap() - 0.601_907_230_197_234_6).abs() < 1e-15);
    }

    #[test]
    fn seam_continuity() {
        let below = small_argument(2.0);
        let above = steed(2.0);
        let e = 2f64.exp();
        assert!((below.0 * e - above.0).abs() < 1e-14);
        assert!((below.1 * e - above.1).abs() < 1e-14);
    }

    #[test]
    fn large_argument_no_underflow() {
        let x = 50.0;
        let scaled = bessel_k_scaled(Order::Zero, x).unwrap();
        let lead = (PI / (2.0 * x)).sqrt();
        assert!((scaled / lead - 1.0).abs() < 3e-3);
        assert!(bessel_k_scaled(Order::One, 800.0).unwrap().is_finite());
        assert!(bessel_k(Order::Zero, 800.0).unwrap() >= 0.0);
    }

    #[test]
    fn bound_dominates() {
        for &x in &[0.3, 1.0, 4.0, 20.0, 90.0] {
            let (k0, k1) = bessel_k01_scaled(x).unwrap();
            let b = bessel_k_bound(x) * x.exp();
            assert!(k0 < b && k1 < b, "x={x}");
        }
    }

    #[test]
    fn domain() {
        assert!(matches!(bessel_k(Order::Zero, 0.0), Err(Error::Domain(_))));
        assert!(Order::try_from(2).is_err());
    }
}
