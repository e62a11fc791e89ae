//! The instanton-corrected hyperkähler metric and Kähler forms.

use conifold_hk::forms::Definiteness;
use conifold_hk::hk::*;
use conifold_hk::Complex64;

fn main() -> conifold_hk::Result<()> {
    let cfg = HkConfig::new();
    for (t, tv, tb) in [(Complex64::new(0.0, 0.05), 0.0, 0.0), (Complex64::new(0.1, -0.2), 0.4, 1.1), (Complex64::new(0.2, 0.1), 0.0, 0.0)] {
        let p = FiberPoint::new(t, tv, tb);
        let r = metric_gn_report(&p, &cfg)?;
        let d = r.metric.definiteness();
        println!("t = {t}  theta = ({tv}, {tb})");
        println!("  N = {:.12}  definiteness {d:?}  tail <= {:.2e}", r.n_total, r.tail_bound);
        println!("  eigenvalues {:?}", r.metric.eigenvalues());
        if d != Definiteness::Indefinite {
            let f = kahler_forms(&p, &cfg)?;
            let alt = holomorphic_form_by_charge(&p, &cfg)?;
            println!("  two routes for w1 + i w2 differ by {:.2e}", f.holomorphic.distance(&alt));
        }
    }
    Ok(())
}
