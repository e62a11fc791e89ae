//! ω₃ and ϖ recovered from a Laurent fit of the twistor family, compared with
//! the closed forms.

use conifold_hk::hk::*;
use conifold_hk::twistor::*;
use conifold_hk::Complex64;

fn main() -> conifold_hk::Result<()> {
    let cfg = TwistorConfig::new();
    for p in [FiberPoint::new(Complex64::new(0.1, 0.3), 0.2, 0.5), FiberPoint::new(Complex64::new(-0.15, 0.2), 1.0, 2.0)] {
        let fit = varpi_coefficients(&p, &cfg, 1e-4)?;
        let kf = kahler_forms(&p, &cfg.hk)?;
        println!("t = {}", p.t);
        println!("  fit residual {:.2e}", fit.residual);
        println!("  w3 relative error {:.2e}", fit.omega3.distance(&kf.omega3) / kf.omega3.max_norm());
        println!("  holomorphic relative error {:.2e}", fit.holomorphic.distance(&kf.holomorphic) / kf.holomorphic.max_norm());
        let z = Complex64::new(0.4, 0.6);
        let x = log_x_beta_vee(&p, z, &cfg)?;
        println!("  log X(zeta = {z}) = {:.12} (+/- {:.1e})", x.log_value, x.error + x.tail_bound);
    }
    Ok(())
}
