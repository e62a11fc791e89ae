//! Faddeev quantum dilogarithm, its symmetries, and the difference equation of
//! the non-perturbative free energy.

use conifold_hk::specfn::*;
use conifold_hk::{Budget, Complex64};

fn main() -> conifold_hk::Result<()> {
    let budget = Budget::default();
    let w = OmegaPair::new(Complex64::new(1.0, 0.0), Complex64::new(0.3, 0.7))?;
    for t in [Complex64::new(0.2, 0.1), Complex64::new(-0.4, 0.3), Complex64::new(0.6, -0.2)] {
        let h = quantum_dilog_h(t, w, &budget)?;
        let swapped = quantum_dilog_h(t, w.swapped(), &budget)?;
        let c = Complex64::new(0.8, 0.5);
        let scaled = quantum_dilog_h(c * t, w.scaled(c), &budget)?;
        println!("H({t}) = {h:.12}");
        println!("  |H - H(swapped)| = {:.2e}  |H - H(scaled)| = {:.2e}", (h - swapped).norm(), (h - scaled).norm());
    }
    let lambda = Complex64::new(-0.9, 0.4);
    let t = Complex64::new(0.25, 0.6);
    println!("F_np({lambda}, {t}) = {:.12}", f_non_pert(lambda, t, &budget)?);
    println!("difference equation residual {:.2e}", difference_equation_residual(lambda, t, &budget)?);
    println!("binet mu(2+i) = {:.15}", binet_mu(Complex64::new(2.0, 1.0))?);
    Ok(())
}
