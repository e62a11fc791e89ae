//! Central charges of the BPS spectrum and the ray structure in the λ-plane.

use conifold_hk::bps::*;
use conifold_hk::Complex64;

fn main() -> conifold_hk::Result<()> {
    let t = Complex64::new(0.3, 0.8);
    let p = ModuliPoint::new(t);
    for g in [Charge::BETA, Charge::BETA_VEE, Charge::new(0, 1, -1), Charge::new(0, 0, 2)] {
        println!("Z({g}) = {:.10}  Omega = {}", central_charge(&p, g)?, omega(g));
    }
    println!("rays with |n| <= 2, sorted by angle:");
    for r in enumerate_rays(t, -2..=2)? {
        println!("  {r:>7}  angle {:+.6}", r.angle());
    }
    let lambda = Complex64::new(-1.0, 0.2);
    let s = classify_sector(t, lambda, -3..=3)?;
    println!("lambda = {lambda} lies between {} and {}, b sign {}", s.lower, s.upper, s.b_sign);
    let c = convergence_check(&p, 1.0, 20)?;
    println!("sum |Omega| e^(-|Z|) to |n| = 20: {:.10} (tail <= {:.2e})", c.partial_sum, c.tail_bound);
    Ok(())
}
