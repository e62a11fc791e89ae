//! Jump factors attached to the BPS rays of the λ-plane and the ordered
//! products picked up when a direction is rotated across several rays.
//!
//! For Im t > 0 the ray l_n = iℝ₊(t + n) sits at angle π/2 + arg(t + n) and
//! −l_n at arg(t + n) − π/2. Both families accumulate at ±l_∞ = iℝ±.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bps::bounding_rays;
use crate::config::{Budget, RAY_ANGLE_TOL};
use crate::error::{Error, Result};
use crate::specfn::msine::log1m_exp;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const LOG_NEGLIGIBLE: f64 = -41.5;

/// l_n (`Plus`) or −l_n (`Minus`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Plus,
    Minus,
}

impl Family {
    /// Start of the open half-circle of angles swept by the family.
    fn base_angle(self) -> f64 {
        match self {
            Family::Plus => FRAC_PI_2,
            Family::Minus => -FRAC_PI_2,
        }
    }

    /// κ in the exponent κ(t + n)/λ of the factor.
    fn kappa(self) -> Complex64 {
        match self {
            Family::Plus => -2.0 * PI * I,
            Family::Minus => 2.0 * PI * I,
        }
    }
}

/// log of the factor gained when l_n or −l_n is crossed anticlockwise.
pub fn log_jump_factor(n: i64, t: Complex64, lambda: Complex64, family: Family) -> Result<Complex64> {
    let a = family.kappa() * (t + n as f64) / lambda;
    let l = log1m_exp(a)?;
    Ok(match family {
        Family::Plus => l,
        Family::Minus => -l,
    })
}

/// (1 − e^{−2πi(t+n)/λ}) for l_n, (1 − e^{2πi(t+n)/λ})^{−1} for −l_n.
pub fn jump_factor(n: i64, t: Complex64, lambda: Complex64, family: Family) -> Result<Complex64> {
    if lambda.norm() == 0.0 {
        return Err(Error::Domain("λ = 0".into()));
    }
    let e = (family.kappa() * (t + n as f64) / lambda).exp();
    let one = Complex64::new(1.0, 0.0);
    match family {
        Family::Plus => Ok(one - e),
        Family::Minus => {
            let d = one - e;
            if d.norm() == 0.0 {
                return Err(Error::Pole(format!("1 − e^(2πi(t+{n})/λ) vanishes")));
            }
            Ok(d.inv())
        }
    }
}

/// The two infinite products relating sectors on opposite sides of ±l_∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProductSector {
    /// Π_{n>0}(1 − e^{−2πi(t+n)/λ}) Π_{n>0}(1 − e^{2πi(t−n)/λ})^{−1}
    Pos,
    /// Π_{n>0}(1 − e^{−2πi(t−n)/λ}) Π_{n>0}(1 − e^{2πi(t+n)/λ})^{−1}
    Neg,
}

/// Σ_{n>0} log(1 − e^{κ(t + s·n)/λ}), stopped once the terms are below 1e−18
/// and the geometric remainder is too.
fn one_sided_log_product(t: Complex64, lambda: Complex64, kappa: Complex64, s: f64, budget: &Budget) -> Result<Complex64> {
    let slope = (kappa * s / lambda).re;
    if slope >= 0.0 {
        return Err(Error::Convergence(format!("exponents do not decay along n for λ = {lambda}")));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut n = 1usize;
    loop {
        let a = kappa * (t + s * n as f64) / lambda;
        sum += log1m_exp(a)?;
        if a.re < LOG_NEGLIGIBLE && a.re.exp() / (1.0 - slope.exp()) < 1e-17 {
            return Ok(sum);
        }
        n += 1;
        if n > budget.max_terms {
            return Err(Error::Budget(format!("infinite jump product at λ = {lambda}")));
        }
    }
}

pub fn infinite_product_jump(t: Complex64, lambda: Complex64, which: ProductSector, budget: &Budget) -> Result<Complex64> {
    Ok(log_infinite_product_jump(t, lambda, which, budget)?.exp())
}

pub fn log_infinite_product_jump(t: Complex64, lambda: Complex64, which: ProductSector, budget: &Budget) -> Result<Complex64> {
    if lambda.norm() == 0.0 {
        return Err(Error::Domain("λ = 0".into()));
    }
    let (s_plus, s_minus) = match which {
        ProductSector::Pos => (1.0, -1.0),
        ProductSector::Neg => (-1.0, 1.0),
    };
    let a = one_sided_log_product(t, lambda, -2.0 * PI * I, s_plus, budget)?;
    let b = one_sided_log_product(t, lambda, 2.0 * PI * I, s_minus, budget)?;
    Ok(a - b)
}

/// Rays of one family crossed by an arc: n runs over `lo..=hi`, `None` meaning
/// unbounded on that side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossedRange {
    pub family: Family,
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

/// n with arg(t + n) = φ, decreasing in φ ∈ (0, π).
fn n_at(t: Complex64, phi: f64) -> f64 {
    t.im / phi.tan() - t.re
}

fn wrap(a: f64) -> f64 {
    let mut d = a.rem_euclid(2.0 * PI);
    if d > PI {
        d -= 2.0 * PI;
    }
    d
}

fn check_direction(t: Complex64, angle: f64) -> Result<()> {
    match bounding_rays(t, Complex64::from_polar(1.0, angle), RAY_ANGLE_TOL) {
        Ok(_) => Ok(()),
        Err(Error::OnRay(m)) => Err(Error::Ordering(m)),
        Err(e) => Err(e),
    }
}

/// Rays strictly inside the shorter arc between two directions, together with
/// the orientation (+1 anticlockwise from `from` to `to`).
pub fn crossed_rays(t: Complex64, from: f64, to: f64) -> Result<(i8, Vec<CrossedRange>)> {
    if !(t.im > 0.0) {
        return Err(Error::Domain(format!("ray walk needs Im t > 0, got {t}")));
    }
    check_direction(t, from)?;
    check_direction(t, to)?;
    let d = wrap(to - from);
    if d.abs() >= PI - 1e-12 {
        return Err(Error::Ordering("opposite directions have no shorter arc".into()));
    }
    let (a, b) = if d >= 0.0 { (from, from + d) } else { (from + d, from) };
    let mut out = Vec::new();
    for family in [Family::Plus, Family::Minus] {
        let c = family.base_angle();
        for k in -2..=2 {
            let lo = a - c - 2.0 * PI * k as f64;
            let hi = b - c - 2.0 * PI * k as f64;
            let p = lo.max(0.0);
            let q = hi.min(PI);
            if p >= q {
                continue;
            }
            let n_hi = (lo > 0.0).then(|| n_at(t, p).ceil() as i64 - 1);
            let n_lo = (hi < PI).then(|| n_at(t, q).floor() as i64 + 1);
            if let (Some(l), Some(h)) = (n_lo, n_hi) {
                if l > h {
                    continue;
                }
            }
            out.push(CrossedRange { family, lo: n_lo, hi: n_hi });
        }
    }
    Ok((if d >= 0.0 { 1 } else { -1 }, out))
}

/// log of the product of jump factors collected while turning a direction from
/// angle `from` to angle `to`, evaluated at λ. Turning anticlockwise multiplies
/// by each factor, clockwise divides.
pub fn log_jump_product(t: Complex64, lambda: Complex64, from: f64, to: f64, budget: &Budget) -> Result<Complex64> {
    let (orientation, ranges) = crossed_rays(t, from, to)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for r in ranges {
        let kappa = r.family.kappa();
        let slope = (kappa / lambda).re;
        match (r.lo, r.hi) {
            (Some(lo), Some(hi)) => {
                for n in lo..=hi {
                    sum += log_jump_factor(n, t, lambda, r.family)?;
                }
            }
            (lo, hi) => {
                // one unbounded side; walk outwards from the finite end
                let (start, step) = match (lo, hi) {
                    (Some(lo), None) => (lo, 1i64),
                    (None, Some(hi)) => (hi, -1i64),
                    _ => return Err(Error::Ordering("arc covers a whole family".into())),
                };
                let rate = slope * step as f64;
                if rate >= 0.0 {
                    return Err(Error::Convergence(format!(
                        "jump factors across the accumulation ray do not decay at λ = {lambda}"
                    )));
                }
                let mut n = start;
                let mut count = 0usize;
                loop {
                    sum += log_jump_factor(n, t, lambda, r.family)?;
                    let a = (kappa * (t + n as f64) / lambda).re;
                    if a < LOG_NEGLIGIBLE && a.exp() / (1.0 - rate.exp()) < 1e-17 {
                        break;
                    }
                    n += step;
                    count += 1;
                    if count > budget.max_terms {
                        return Err(Error::Budget(format!("jump product at λ = {lambda}")));
                    }
                }
            }
        }
    }
    Ok(orientation as f64 * sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn angle(t: Complex64, n: i64, family: Family) -> f64 {
        family.base_angle() + (t + n as f64).arg()
    }

    #[test]
    fn neighbouring_sectors_cross_one_ray() {
        let t = c(0.3, 0.8);
        let a0 = angle(t, 0, Family::Plus);
        let a1 = angle(t, 1, Family::Plus);
        let am1 = angle(t, -1, Family::Plus);
        let (o, r) = crossed_rays(t, 0.5 * (a0 + am1), 0.5 * (a0 + a1)).unwrap();
        assert_eq!(o, -1);
        assert_eq!(r, vec![CrossedRange { family: Family::Plus, lo: Some(0), hi: Some(0) }]);
        let (_, r) = crossed_rays(t, 0.5 * (a0 + am1), 0.5 * (a0 + am1) + 0.01).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn crossing_the_accumulation_ray_matches_the_closed_products() {
        let t = c(0.3, 0.8);
        let budget = Budget::default();
        // from between −l₀ and −l₋₁ to between l₁ and l₀
        let from = 0.5 * (angle(t, 0, Family::Minus) + angle(t, -1, Family::Minus));
        let to = 0.5 * (angle(t, 1, Family::Plus) + angle(t, 0, Family::Plus));
        let lambda = Complex64::from_polar(1.3, 0.5 * (from + to));
        let walk = log_jump_product(t, lambda, from, to, &budget).unwrap();
        let closed = log_infinite_product_jump(t, lambda, ProductSector::Pos, &budget).unwrap();
        assert!((walk.exp() - closed.exp()).norm() < 1e-12 * closed.exp().norm());

        // from between l₀ and l₋₁ to between −l₀ and −l₁
        let from = 0.5 * (angle(t, 0, Family::Plus) + angle(t, -1, Family::Plus));
        let to = 0.5 * (angle(t, 0, Family::Minus) + angle(t, 1, Family::Minus)) + 2.0 * PI;
        let lambda = Complex64::from_polar(0.7, 0.5 * (from + to));
        let walk = log_jump_product(t, lambda, from, to, &budget).unwrap();
        let closed = log_infinite_product_jump(t, lambda, ProductSector::Neg, &budget).unwrap();
        assert!((walk.exp() - closed.exp()).norm() < 1e-12 * closed.exp().norm());
    }

    #[test]
    fn factors() {
        let (t, l) = (c(0.3, 0.8), c(-1.0, 0.2));
        let f = jump_factor(2, t, l, Family::Plus).unwrap();
        let e = (c(0.0, -2.0 * PI) * (t + 2.0) / l).exp();
        assert!((f - (1.0 - e)).norm() < 1e-15);
        let g = jump_factor(2, t, l, Family::Minus).unwrap();
        assert!((log_jump_factor(2, t, l, Family::Minus).unwrap().exp() - g).norm() < 1e-13 * g.norm());
        assert!(matches!(
            infinite_product_jump(t, c(1.0, 0.0), ProductSector::Pos, &Budget::default()),
            Err(Error::Convergence(_))
        ));
    }
}
