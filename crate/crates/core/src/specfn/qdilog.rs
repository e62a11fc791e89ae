//! Faddeev's quantum dilogarithm H, its correction exponent Q_H and the
//! triple-sine function G₃ behind the non-perturbative free energy.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bernoulli::{b33, gen_bernoulli_poly};
use super::msine::{log_double_sine, log_triple_sine_split};
use super::polylog::li2;
use crate::config::Budget;
use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// A pair of periods with ω₁/ω₂ ∉ ℝ_{<0}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OmegaPair {
    pub omega1: Complex64,
    pub omega2: Complex64,
}

impl OmegaPair {
    pub fn new(omega1: Complex64, omega2: Complex64) -> Result<Self> {
        if omega1.norm() == 0.0 || omega2.norm() == 0.0 {
            return Err(Error::Domain("periods must be nonzero".into()));
        }
        let r = omega1 / omega2;
        if r.im.abs() <= 1e-14 * r.norm() && r.re < 0.0 {
            return Err(Error::Domain(format!("period ratio {r} is negative real")));
        }
        Ok(OmegaPair { omega1, omega2 })
    }

    pub fn swapped(self) -> Self {
        OmegaPair { omega1: self.omega2, omega2: self.omega1 }
    }

    pub fn scaled(self, c: Complex64) -> Self {
        OmegaPair { omega1: self.omega1 * c, omega2: self.omega2 * c }
    }
}

/// log H(t | ω₁, ω₂) = −(πi/2)B_{2,2}(t) + log S₂(t).
pub fn log_quantum_dilog_h(t: Complex64, omegas: OmegaPair, budget: &Budget) -> Result<Complex64> {
    let OmegaPair { omega1, omega2 } = omegas;
    let bern = gen_bernoulli_poly(2, t, &[omega1, omega2])?;
    Ok(-0.5 * PI * I * bern + log_double_sine(t, omega1, omega2, budget)?)
}

pub fn quantum_dilog_h(t: Complex64, omegas: OmegaPair, budget: &Budget) -> Result<Complex64> {
    Ok(log_quantum_dilog_h(t, omegas, budget)?.exp())
}

/// Constant term of the correction exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorrectionConstant {
    /// (π/12)·ω₂/ω₁, exactly as the formula is usually quoted.
    Printed,
    /// (πi/12)·ω₂/ω₁, the choice for which H·e^{Q_H} stays polynomially
    /// bounded as λ → ∞.
    #[default]
    Bounded,
}

fn q_head(t: Complex64, omega1: Complex64, omega2: Complex64) -> Result<Complex64> {
    let x = (2.0 * PI * I * t / omega1).exp();
    if x.im == 0.0 && x.re >= 1.0 {
        return Err(Error::BranchCut(format!("e^(2πit/ω₁) = {} on [1, ∞)", x.re)));
    }
    let l2 = li2(x)?;
    let l1 = (Complex64::new(1.0, 0.0) - x).ln();
    Ok(-omega1 / (2.0 * PI * I * omega2) * l2 - 0.5 * l1)
}

/// Q_H(t | ω₁, ω₂) = −(ω₁/2πiω₂)Li₂(e^{2πit/ω₁}) − ½log(1 − e^{2πit/ω₁}) + (π/12)(ω₂/ω₁).
pub fn q_correction(t: Complex64, omega1: Complex64, omega2: Complex64) -> Result<Complex64> {
    q_correction_with(t, omega1, omega2, CorrectionConstant::Printed)
}

pub fn q_correction_with(
    t: Complex64,
    omega1: Complex64,
    omega2: Complex64,
    constant: CorrectionConstant,
) -> Result<Complex64> {
    let head = q_head(t, omega1, omega2)?;
    let c = match constant {
        CorrectionConstant::Printed => Complex64::new(PI / 12.0, 0.0),
        CorrectionConstant::Bounded => Complex64::new(0.0, PI / 12.0),
    };
    Ok(head + c * omega2 / omega1)
}

/// Position of the shift inside G₃.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum G3Shift {
    /// G₃(z) = e^{(πi/6)B_{3,3}(z)} S₃(z | ω₁, ω₁, ω₂); satisfies
    /// G₃(z + ω₁)/G₃(z) = 1/H(z | ω₁, ω₂).
    #[default]
    Unshifted,
    /// Both factors evaluated at z + ω₁; then G₃(z + ω₁)/G₃(z) = 1/H(z + ω₁ | ω₁, ω₂).
    ByOmega1,
}

/// log G₃(z | ω₁, ω₂) along the product branch.
pub fn log_triple_g3(z: Complex64, omega1: Complex64, omega2: Complex64, budget: &Budget) -> Result<Complex64> {
    log_triple_g3_with(z, omega1, omega2, G3Shift::Unshifted, budget)
}

pub fn log_triple_g3_with(
    z: Complex64,
    omega1: Complex64,
    omega2: Complex64,
    shift: G3Shift,
    budget: &Budget,
) -> Result<Complex64> {
    let arg = match shift {
        G3Shift::Unshifted => z,
        G3Shift::ByOmega1 => z + omega1,
    };
    let periods = [omega1, omega1, omega2];
    let bern = b33(arg, omega1, omega1, omega2);
    let (head, tail) = log_triple_sine_split(arg, periods, budget)?;
    Ok((PI * I / 6.0) * bern + head + tail)
}

pub fn triple_g3(z: Complex64, omega1: Complex64, omega2: Complex64, budget: &Budget) -> Result<Complex64> {
    Ok(log_triple_g3(z, omega1, omega2, budget)?.exp())
}

/// F_np(λ, t) = log G₃(t | λ/2π, 1).
pub fn f_non_pert(lambda: Complex64, t: Complex64, budget: &Budget) -> Result<Complex64> {
    if lambda.norm() == 0.0 {
        return Err(Error::Domain("λ must be nonzero".into()));
    }
    log_triple_g3(t, lambda / (2.0 * PI), Complex64::new(1.0, 0.0), budget)
}

/// F_np along a path of t values, unwrapped so the imaginary part moves
/// continuously. Consecutive samples must be close enough that the jump of
/// the continuous branch stays below π/2.
pub fn f_non_pert_path(lambda: Complex64, path: &[Complex64], budget: &Budget) -> Result<Vec<Complex64>> {
    let mut out: Vec<Complex64> = Vec::with_capacity(path.len());
    for &t in path {
        let raw = f_non_pert(lambda, t, budget)?;
        if raw.re < -30.0 {
            return Err(Error::BranchTrack(format!("G3 nearly vanishes at t = {t}")));
        }
        let value = match out.last() {
            None => raw,
            Some(prev) => {
                let turns = ((prev.im - raw.im) / (2.0 * PI)).round();
                let v = raw + Complex64::new(0.0, 2.0 * PI * turns);
                if (v.im - prev.im).abs() > 0.5 * PI {
                    return Err(Error::BranchTrack(format!("phase jump near t = {t}; refine the path")));
                }
                v
            }
        };
        out.push(value);
    }
    Ok(out)
}

/// Reduces the imaginary part of a logarithm into (−π, π].
pub fn wrap_log(z: Complex64) -> Complex64 {
    let mut im = z.im.rem_euclid(2.0 * PI);
    if im > PI {
        im -= 2.0 * PI;
    }
    Complex64::new(z.re, im)
}

/// |F_np(λ, t + λ̌) − F_np(λ, t) + log H(t | λ̌, 1)| modulo 2πi.
pub fn difference_equation_residual(lambda: Complex64, t: Complex64, budget: &Budget) -> Result<f64> {
    let check = lambda / (2.0 * PI);
    let f1 = f_non_pert(lambda, t + check, budget)?;
    let f0 = f_non_pert(lambda, t, budget)?;
    let h = log_quantum_dilog_h(t, OmegaPair::new(check, Complex64::new(1.0, 0.0))?, budget)?;
    Ok(wrap_log(f1 - f0 + h).norm())
}
