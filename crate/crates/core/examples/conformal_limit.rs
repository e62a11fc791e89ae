//! The conformal-limit coordinate: value, ray jumps and both asymptotic regimes.

use conifold_hk::conformal::*;
use conifold_hk::{Budget, Complex64};

fn main() -> conifold_hk::Result<()> {
    let budget = Budget::default();
    let t = Complex64::new(0.3, 0.8);
    let lambda = Complex64::new(-1.0, 0.2);
    let ctx = SectorContext::new(t, lambda, &budget)?;
    let inst = log_x_inst_report(&ctx, &budget)?;
    println!("log X_inst({t}, {lambda}) = {:.15} (tail <= {:.1e}, {} direct pairs)", inst.value, inst.tail_bound, inst.n_direct);
    println!("X = {:.15}", conformal_x_beta_vee(t, lambda, &budget)?);

    for n in -2..=2 {
        for family in [Family::Plus, Family::Minus] {
            for m in measure_jump(t, n, family, 1.0, 1e-6, &budget)? {
                println!("jump across {:>5}: relative error {:.1e}", m.ray.to_string(), m.relative_error());
            }
        }
    }

    let (a0, a1) = base_sector(t);
    let mid = 0.5 * (a0 + a1);
    println!("{:>3} {:>14} {:>14}", "k", "|L(2^-k)|", "log|X(2^k)|");
    for k in 0..=10 {
        let small = SectorContext::new(t, Complex64::from_polar(2f64.powi(-k), mid), &budget)?;
        let l = log_x_inst_beta_vee(&small, &budget)?.norm();
        let big = log_conformal_x_beta_vee(t, Complex64::from_polar(2f64.powi(k), mid), &budget)?.re;
        println!("{k:>3} {l:>14.6e} {big:>14.6}");
    }
    Ok(())
}
