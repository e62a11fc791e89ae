//! Periods of the mirror curve family, their Picard–Fuchs residual and the
//! monodromy t → t + 1.

use conifold_hk::ask::*;
use conifold_hk::Complex64;

fn main() -> conifold_hk::Result<()> {
    let m = monodromy_matrix_z0();
    for t in [Complex64::new(0.1, 0.3), Complex64::new(-0.2, 0.15), Complex64::new(0.35, -0.1)] {
        let p = periods(t)?;
        println!("t = {t}");
        for (k, w) in p.as_array().iter().enumerate() {
            println!("  w{k} = {w:.12}");
        }
        println!("  tau = {:.12}  region {:?}", tau(t)?, region_classify(t));
        println!("  PF residual {:.2e}", pf_residual(t)?);
        let moved = periods_continued(t + 1.0)?.as_array();
        let mapped = apply_monodromy(&m, &p).as_array();
        let err = moved.iter().zip(&mapped).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        println!("  |periods(t+1) - M periods(t)| = {err:.2e}");
    }
    Ok(())
}
