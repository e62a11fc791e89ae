//! Conjecture check: the conformal-limit coordinate against H·e^{Q_H}·e^{2πiZ/λ}
//! on a sweep of directions around the λ-plane.

use std::f64::consts::PI;

use conifold_hk::conformal::*;
use conifold_hk::{Budget, Complex64};

fn main() -> conifold_hk::Result<()> {
    let budget = Budget::default();
    for t in [Complex64::new(0.3, 0.8), Complex64::new(-1.7, 0.3)] {
        println!("t = {t}");
        for k in 0..16 {
            let ang = -PI + (k as f64 + 0.37) * PI / 8.0;
            let lambda = Complex64::from_polar(0.8, ang);
            match conjecture_residual(t, lambda, &budget) {
                Ok(r) => println!("  arg lambda {ang:+.4}  residual {r:.2e}"),
                Err(e) => println!("  arg lambda {ang:+.4}  {}: {e}", e.kind()),
            }
        }
    }
    Ok(())
}
