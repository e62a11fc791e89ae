//! Solution Φ_{β∨}(t, 1, λ) of the Riemann–Hilbert problem built from Faddeev's
//! quantum dilogarithm. On the sector between l₀ and l₋₁ it is
//! H(t | 1, −λ)·e^{Q_H(t | 1, −λ)}; every other sector is reached by the jump
//! factors of the rays in between.
//!
//! Nothing here touches the Binet sums of the parent module, so comparing the
//! two is a genuine cross-check.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::rays::log_jump_product;
use crate::bps::bounding_rays;
use crate::config::{Budget, RAY_ANGLE_TOL};
use crate::error::{Error, Result};
use crate::specfn::{log_quantum_dilog_h, q_correction_with, CorrectionConstant, OmegaPair};

/// Knobs of the base-sector formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RhConfig {
    pub constant: CorrectionConstant,
    /// Multiplies Q_H; −1 is only useful to check that the comparison notices.
    pub correction_sign: f64,
}

impl Default for RhConfig {
    fn default() -> Self {
        RhConfig { constant: CorrectionConstant::default(), correction_sign: 1.0 }
    }
}

/// Angles of l₀ and l₋₁, both in (π/2, 3π/2).
pub fn base_sector(t: Complex64) -> (f64, f64) {
    (FRAC_PI_2 + t.arg(), FRAC_PI_2 + (t - 1.0).arg())
}

/// log(H·e^{Q_H}) at (t | 1, −λ), the analytic function that equals Φ on the
/// base sector.
pub fn log_base_phi(t: Complex64, lambda: Complex64, cfg: &RhConfig, budget: &Budget) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let omegas = OmegaPair::new(one, -lambda)?;
    let h = log_quantum_dilog_h(t, omegas, budget)?;
    let q = q_correction_with(t, one, -lambda, cfg.constant)?;
    Ok(h + cfg.correction_sign * q)
}

/// Margin kept from the edge of the half-plane so the jump products converge.
const HALF_PLANE_MARGIN: f64 = 0.01;

fn reach(t: Complex64, lambda: Complex64) -> Option<(f64, f64)> {
    let (a0, a1) = base_sector(t);
    let w = a1 - a0;
    let mut alpha = lambda.arg();
    while alpha < a0 - PI {
        alpha += 2.0 * PI;
    }
    while alpha >= a0 + PI {
        alpha -= 2.0 * PI;
    }
    let base = alpha.clamp(a0 + 0.05 * w, a1 - 0.05 * w);
    ((alpha - base).abs() < FRAC_PI_2 - HALF_PLANE_MARGIN).then_some((base, alpha))
}

pub fn log_rh_solution_phi_with(t: Complex64, lambda: Complex64, cfg: &RhConfig, budget: &Budget) -> Result<Complex64> {
    if !(t.im > 0.0) {
        return Err(Error::Domain(format!("Φ is built for Im t > 0, got {t}")));
    }
    bounding_rays(t, lambda, RAY_ANGLE_TOL)?;
    if let Some((base, alpha)) = reach(t, lambda) {
        let (a0, a1) = base_sector(t);
        let head = log_base_phi(t, lambda, cfg, budget)?;
        if alpha > a0 && alpha < a1 {
            return Ok(head);
        }
        return Ok(head + log_jump_product(t, lambda, base, alpha, budget)?);
    }
    // the jump data is symmetric under λ → −λ with Φ → 1/Φ
    if reach(t, -lambda).is_some() {
        return Ok(-log_rh_solution_phi_with(t, -lambda, cfg, budget)?);
    }
    Err(Error::Domain(format!("λ = {lambda} is not reachable from the base sector")))
}

pub fn log_rh_solution_phi(t: Complex64, lambda: Complex64, budget: &Budget) -> Result<Complex64> {
    log_rh_solution_phi_with(t, lambda, &RhConfig::default(), budget)
}

pub fn rh_solution_phi(t: Complex64, lambda: Complex64, budget: &Budget) -> Result<Complex64> {
    Ok(log_rh_solution_phi(t, lambda, budget)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::rays::{jump_factor, Family};

    #[test]
    fn crossing_l0_multiplies_by_its_factor() {
        let t = Complex64::new(0.3, 0.8);
        let budget = Budget::default();
        let (a0, _) = base_sector(t);
        let lambda = Complex64::from_polar(0.9, a0 - 0.1);
        let inside = log_base_phi(t, lambda, &RhConfig::default(), &budget).unwrap();
        let outside = log_rh_solution_phi(t, lambda, &budget).unwrap();
        // turning from the base sector clockwise across l₀ divides by its factor
        let f = jump_factor(0, t, lambda, Family::Plus).unwrap();
        assert!(((inside - outside).exp() - f).norm() < 1e-12 * f.norm());
    }

    #[test]
    fn inversion_route() {
        let t = Complex64::new(0.3, 0.8);
        let budget = Budget::default();
        let lambda = Complex64::new(0.9, -0.15);
        let a = log_rh_solution_phi(t, lambda, &budget).unwrap();
        let b = log_rh_solution_phi(t, -lambda, &budget).unwrap();
        assert!(((a + b).exp() - 1.0).norm() < 1e-12);
    }
}
