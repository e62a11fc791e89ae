//! Charge lattice Γ = ℤβ∨ ⊕ ℤβ ⊕ ℤδ of the resolved conifold, its BPS indices
//! and central charges, and the ray/sector bookkeeping in the λ-plane.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::RAY_ANGLE_TOL;
use crate::error::{Error, Result};
use crate::specfn::polylog::{li2, li2_side, Side};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// n_β∨·β∨ + n_β·β + n_δ·δ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Charge {
    pub n_beta_vee: i64,
    pub n_beta: i64,
    pub n_delta: i64,
}

impl Charge {
    pub const ZERO: Charge = Charge::new(0, 0, 0);
    pub const BETA_VEE: Charge = Charge::new(1, 0, 0);
    pub const BETA: Charge = Charge::new(0, 1, 0);
    pub const DELTA: Charge = Charge::new(0, 0, 1);

    pub const fn new(n_beta_vee: i64, n_beta: i64, n_delta: i64) -> Self {
        Charge { n_beta_vee, n_beta, n_delta }
    }

    /// ±β + nδ
    pub const fn hyper(sign: i64, n: i64) -> Self {
        Charge::new(0, sign, n)
    }

    pub fn l1_norm(self) -> i64 {
        self.n_beta_vee.abs() + self.n_beta.abs() + self.n_delta.abs()
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}β∨{:+}β{:+}δ", self.n_beta_vee, self.n_beta, self.n_delta)
    }
}

impl Add for Charge {
    type Output = Charge;
    fn add(self, o: Charge) -> Charge {
        Charge::new(self.n_beta_vee + o.n_beta_vee, self.n_beta + o.n_beta, self.n_delta + o.n_delta)
    }
}

impl Sub for Charge {
    type Output = Charge;
    fn sub(self, o: Charge) -> Charge {
        self + (-o)
    }
}

impl Neg for Charge {
    type Output = Charge;
    fn neg(self) -> Charge {
        Charge::new(-self.n_beta_vee, -self.n_beta, -self.n_delta)
    }
}

impl Mul<Charge> for i64 {
    type Output = Charge;
    fn mul(self, c: Charge) -> Charge {
        Charge::new(self * c.n_beta_vee, self * c.n_beta, self * c.n_delta)
    }
}

/// ⟨a, b⟩ with ⟨β∨, β⟩ = 1 and δ in the kernel.
pub fn pairing(a: Charge, b: Charge) -> i64 {
    a.n_beta_vee * b.n_beta - a.n_beta * b.n_beta_vee
}

/// BPS index: 1 on ±β + nδ, −2 on kδ (k ≠ 0), 0 elsewhere.
pub fn omega(gamma: Charge) -> i64 {
    match gamma {
        Charge { n_beta_vee: 0, n_beta: 1 | -1, .. } => 1,
        Charge { n_beta_vee: 0, n_beta: 0, n_delta } if n_delta != 0 => -2,
        _ => 0,
    }
}

/// Charges with Ω ≠ 0 and |n_δ| ≤ n_cut, ordered by |n_δ| then sign.
pub fn support(n_cut: i64, include_flavor: bool) -> Vec<Charge> {
    let mut out = Vec::new();
    for k in 0..=n_cut {
        for n in if k == 0 { vec![0] } else { vec![k, -k] } {
            out.push(Charge::hyper(1, n));
            out.push(Charge::hyper(-1, n));
            if include_flavor && n != 0 {
                out.push(Charge::new(0, 0, n));
            }
        }
    }
    out
}

/// A point of the base together with the sheet of the local system of charges:
/// `sheet` counts anticlockwise crossings of iℝ_{≤0}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModuliPoint {
    pub t: Complex64,
    #[serde(default)]
    pub sheet: i64,
}

impl ModuliPoint {
    pub fn new(t: Complex64) -> Self {
        ModuliPoint { t, sheet: 0 }
    }

    pub fn with_sheet(t: Complex64, sheet: i64) -> Self {
        ModuliPoint { t, sheet }
    }

    /// |Re t| < 1/2, t ≠ 0 and 2Re(e^{2πit}) ≠ 1.
    pub fn in_m(&self) -> bool {
        in_strip(self.t) && self.t.norm() > 0.0 && !on_wall(self.t)
    }

    /// In M and off the cut iℝ_{≤0}.
    pub fn in_m0(&self) -> bool {
        self.in_m() && !on_negative_imaginary_axis(self.t)
    }
}

pub(crate) fn in_strip(t: Complex64) -> bool {
    t.re.abs() < 0.5
}

pub(crate) fn on_wall(t: Complex64) -> bool {
    let q = (2.0 * PI * I * t).exp();
    (2.0 * q.re - 1.0).abs() < crate::config::WALL_TOL
}

pub(crate) fn on_negative_imaginary_axis(t: Complex64) -> bool {
    t.re == 0.0 && t.im <= 0.0
}

/// Z_{β∨}(t) on the given sheet: −t²/2 − Li₂(e^{2πit})/(2πi)² + sheet·t.
/// On the cut iℝ_{<0} the value is the limit from Re t > 0.
pub fn z_beta_vee(t: Complex64, sheet: i64) -> Result<Complex64> {
    let q = (2.0 * PI * I * t).exp();
    let l2 = if on_negative_imaginary_axis(t) {
        if t.im == 0.0 {
            return Err(Error::Domain("t = 0 is not in M".into()));
        }
        li2_side(Complex64::new(q.re, 0.0), Side::Above)?
    } else {
        li2(q)?
    };
    let two_pi_i = 2.0 * PI * I;
    Ok(-0.5 * t * t - l2 / (two_pi_i * two_pi_i) + sheet as f64 * t)
}

/// Z_γ at p, linear in γ with Z_δ = 1, Z_β = t.
pub fn central_charge(p: &ModuliPoint, gamma: Charge) -> Result<Complex64> {
    if !p.in_m() {
        return Err(Error::Domain(format!("t = {} is not in M", p.t)));
    }
    if p.sheet == 0 && on_negative_imaginary_axis(p.t) {
        return Err(Error::Domain(format!("t = {} lies on the cut; pick a sheet", p.t)));
    }
    let mut z = Complex64::new(gamma.n_delta as f64, 0.0) + gamma.n_beta as f64 * p.t;
    if gamma.n_beta_vee != 0 {
        z += gamma.n_beta_vee as f64 * z_beta_vee(p.t, p.sheet)?;
    }
    Ok(z)
}

/// Z′ = 2iZ.
pub fn rescaled_central_charge(p: &ModuliPoint, gamma: Charge) -> Result<Complex64> {
    Ok(2.0 * I * central_charge(p, gamma)?)
}

/// Which BPS ray: l_n = iℝ₊(t + n), −l_n, and l_∞ = iℝ₊, −l_∞ = iℝ₋.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RayIndex {
    Finite(i64),
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BpsRay {
    pub index: RayIndex,
    /// +1 for l, −1 for −l.
    pub sign: i8,
    pub direction: Complex64,
}

impl BpsRay {
    pub fn new(t: Complex64, index: RayIndex, sign: i8) -> Self {
        let base = match index {
            RayIndex::Finite(n) => I * (t + n as f64),
            RayIndex::Infinity => I,
        };
        BpsRay { index, sign, direction: sign as f64 * base / base.norm() }
    }

    /// Angle in (−π, π].
    pub fn angle(&self) -> f64 {
        self.direction.arg()
    }
}

impl fmt::Display for BpsRay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { "-" } else { "" };
        match self.index {
            RayIndex::Finite(n) => write!(f, "{s}l_{n}"),
            RayIndex::Infinity => write!(f, "{s}l_inf"),
        }
    }
}

fn require_upper(t: Complex64) -> Result<()> {
    if t.im == 0.0 || !t.im.is_finite() {
        return Err(Error::Domain(format!("BPS rays need Im t ≠ 0, got {t}")));
    }
    Ok(())
}

/// ±l_n for n in the range together with ±l_∞, sorted by angle in (−π, π].
pub fn enumerate_rays(t: Complex64, n_range: std::ops::RangeInclusive<i64>) -> Result<Vec<BpsRay>> {
    require_upper(t)?;
    let mut rays = vec![BpsRay::new(t, RayIndex::Infinity, 1), BpsRay::new(t, RayIndex::Infinity, -1)];
    for n in n_range {
        rays.push(BpsRay::new(t, RayIndex::Finite(n), 1));
        rays.push(BpsRay::new(t, RayIndex::Finite(n), -1));
    }
    rays.sort_by(|a, b| a.angle().total_cmp(&b.angle()));
    Ok(rays)
}

/// The sector of the λ-plane containing λ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorId {
    /// Bounding ray reached by turning λ clockwise.
    pub lower: BpsRay,
    /// Bounding ray reached by turning λ anticlockwise.
    pub upper: BpsRay,
    /// (n, sign a_n) with a_n = Re((t + n)/λ).
    pub signs: Vec<(i64, i8)>,
    /// sign of b = Re(1/λ).
    pub b_sign: i8,
}

fn angle_gap(a: f64, b: f64) -> f64 {
    // smallest |a − b| modulo 2π
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Bounding rays of λ. Works for every n, not only a window: for Im t > 0 the
/// ray l_n sits at angle π/2 + arg(t + n), decreasing in n, so the neighbours
/// follow from solving arg(t + n) = arg λ − π/2.
pub fn bounding_rays(t: Complex64, lambda: Complex64, tol: f64) -> Result<(BpsRay, BpsRay)> {
    require_upper(t)?;
    if lambda.norm() == 0.0 {
        return Err(Error::Domain("λ = 0".into()));
    }
    // reduce to Im t > 0: rays of t̄ are conjugates of those of t
    if t.im < 0.0 {
        let (lo, hi) = bounding_rays(t.conj(), lambda.conj(), tol)?;
        // conj(s·i(t̄ + n)) = −s·i(t + n)
        let flip = |r: BpsRay| BpsRay::new(t, r.index, -r.sign);
        return Ok((flip(hi), flip(lo)));
    }
    let alpha = lambda.arg();
    for sign in [1i8, -1] {
        let r = BpsRay::new(t, RayIndex::Infinity, sign);
        if angle_gap(alpha, r.angle()) < tol {
            return Err(Error::OnRay(format!("λ = {lambda} on {r}")));
        }
    }
    // λ in the left half plane is bracketed by some l_n, otherwise by some −l_n
    let (sign, beta) = if lambda.re < 0.0 { (1i8, alpha.rem_euclid(2.0 * PI) - FRAC_PI_2) } else { (-1i8, alpha + FRAC_PI_2) };
    // arg(t + n) > β  ⟺  Re t + n < Im t·cot β
    let x = t.im / beta.tan() - t.re;
    let n_hi = x.ceil() as i64 - 1; // largest n with arg(t + n) > β
    let a = BpsRay::new(t, RayIndex::Finite(n_hi), sign);
    let b = BpsRay::new(t, RayIndex::Finite(n_hi + 1), sign);
    for r in [a, b] {
        if angle_gap(alpha, r.angle()) < tol {
            return Err(Error::OnRay(format!("λ = {lambda} on {r}")));
        }
    }
    // larger arg(t + n) means larger angle for both families
    Ok((b, a))
}

/// Sector containing λ plus the sign data a_n, b on the window.
pub fn classify_sector(t: Complex64, lambda: Complex64, n_range: std::ops::RangeInclusive<i64>) -> Result<SectorId> {
    classify_sector_with_tol(t, lambda, n_range, RAY_ANGLE_TOL)
}

pub fn classify_sector_with_tol(
    t: Complex64,
    lambda: Complex64,
    n_range: std::ops::RangeInclusive<i64>,
    tol: f64,
) -> Result<SectorId> {
    let (lower, upper) = bounding_rays(t, lambda, tol)?;
    let sign = |v: f64| if v > 0.0 { 1i8 } else { -1i8 };
    let signs = n_range.map(|n| (n, sign(((t + n as f64) / lambda).re))).collect();
    Ok(SectorId { lower, upper, signs, b_sign: sign(lambda.inv().re) })
}

/// Partial sum of Σ|Ω(γ)|e^{−R|Z_γ|} over supp Ω with |n| ≤ n_cut and a bound
/// on the remainder from |Z_{±β+nδ}| ≥ |n| − |t|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub partial_sum: f64,
    pub tail_bound: f64,
    /// The kδ part of `partial_sum`.
    pub flavor_sum: f64,
}

pub fn convergence_check(p: &ModuliPoint, r: f64, n_cut: i64) -> Result<ConvergenceReport> {
    if !p.in_m() {
        return Err(Error::Domain(format!("t = {} is not in M", p.t)));
    }
    if !(r > 0.0) || n_cut < 0 {
        return Err(Error::Domain("need R > 0 and n_cut ≥ 0".into()));
    }
    let mut hyper = 0.0;
    let mut flavor = 0.0;
    for n in -n_cut..=n_cut {
        // ±β + nδ share |Z| = |t + n|
        hyper += 2.0 * (-r * (p.t + n as f64).norm()).exp();
        if n != 0 {
            flavor += 2.0 * (-r * n.abs() as f64).exp();
        }
    }
    let geometric = 2.0 * (-r * (n_cut + 1) as f64).exp() / (1.0 - (-r).exp());
    // two signs of n, two signs of β, |t + n| ≥ |n| − |t|; plus |Ω(kδ)| = 2
    let tail = 2.0 * geometric * (r * p.t.norm()).exp() + 2.0 * geometric;
    Ok(ConvergenceReport { partial_sum: hyper + flavor, tail_bound: tail, flavor_sum: flavor })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pairing_and_indices() {
        assert_eq!(pairing(Charge::BETA_VEE, Charge::BETA), 1);
        assert_eq!(pairing(Charge::DELTA, Charge::BETA_VEE), 0);
        assert_eq!(omega(Charge::hyper(1, 5)), 1);
        assert_eq!(omega(3 * Charge::DELTA), -2);
        assert_eq!(omega(2 * Charge::BETA), 0);
        assert_eq!(omega(Charge::ZERO), 0);
    }

    #[test]
    fn central_charges() {
        let p = ModuliPoint::new(c(0.1, 0.3));
        assert_eq!(central_charge(&p, Charge::DELTA).unwrap(), c(1.0, 0.0));
        assert_eq!(central_charge(&p, Charge::BETA).unwrap(), p.t);
        assert_eq!(rescaled_central_charge(&p, Charge::BETA).unwrap(), 2.0 * I * p.t);
        assert_eq!(rescaled_central_charge(&p, Charge::ZERO).unwrap(), c(0.0, 0.0));
        assert!(central_charge(&ModuliPoint::new(c(0.6, 0.1)), Charge::BETA).is_err());
        assert!(central_charge(&ModuliPoint::new(c(0.0, -0.3)), Charge::BETA_VEE).is_err());
    }

    #[test]
    fn sheet_shift_is_continuation() {
        // crossing iℝ_{<0} anticlockwise: principal value jumps by −t, the sheet restores it
        let y = 0.4;
        let left = z_beta_vee(c(-1e-9, -y), 0).unwrap();
        let right = z_beta_vee(c(1e-9, -y), 1).unwrap();
        assert!((left - right).norm() < 1e-7);
        let on = z_beta_vee(c(0.0, -y), 1).unwrap();
        assert!((on - right).norm() < 1e-7);
    }

    #[test]
    fn rays_bracket_lambda() {
        let t = c(0.3, 0.8);
        let (lo, hi) = bounding_rays(t, c(-0.9, -0.5), RAY_ANGLE_TOL).unwrap();
        let a = c(-0.9, -0.5).arg().rem_euclid(2.0 * PI);
        assert!(lo.angle().rem_euclid(2.0 * PI) < a && a < hi.angle().rem_euclid(2.0 * PI));
        assert_eq!((lo.index, hi.index), (RayIndex::Finite(0), RayIndex::Finite(-1)));
        assert!(matches!(bounding_rays(t, c(0.0, 2.0), RAY_ANGLE_TOL), Err(Error::OnRay(_))));
        assert!(matches!(bounding_rays(t, I * (t + 2.0), RAY_ANGLE_TOL), Err(Error::OnRay(_))));
    }
}
