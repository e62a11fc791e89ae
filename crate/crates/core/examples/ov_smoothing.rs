//! Difference between the full metric and the Ooguri–Vafa model near t = 0.

use std::f64::consts::FRAC_PI_4;

use conifold_hk::forms::{DT, DT_BAR, D_THETA_BETA};
use conifold_hk::hk::*;
use conifold_hk::Complex64;

fn main() -> conifold_hk::Result<()> {
    let cfg = HkConfig::new();
    let theta_b = 0.7;
    let lim = eta_limits(theta_b, 0.0, &cfg)?;
    println!("limits: eta2 = {:.12}  eta3 = {:.12}", lim.eta2_dt_dtheta_beta, lim.eta3_dt_dtbar.im);
    println!("{:>3} {:>12} {:>18} {:>18}", "k", "|eta1|", "eta2", "eta3");
    for k in 1..=4 {
        let t = Complex64::from_polar(10f64.powi(-k), FRAC_PI_4);
        let e = smoothing_eta(&FiberPoint::new(t, 0.3, theta_b), &cfg)?;
        println!(
            "{k:>3} {:>12.3e} {:>18.12} {:>18.12}",
            e.eta1.max_norm(),
            e.eta2.coeff(DT, D_THETA_BETA).re,
            e.eta3.coeff(DT, DT_BAR).im
        );
    }
    Ok(())
}
