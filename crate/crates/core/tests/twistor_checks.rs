use std::f64::consts::PI;

use conifold_hk::bps::Charge;
use conifold_hk::hk::*;
use conifold_hk::twistor::*;
use conifold_hk::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn laurent_fit_reproduces_the_closed_forms() {
    let cfg = TwistorConfig::new();
    for p in [FiberPoint::new(c(0.1, 0.3), 0.2, 0.5), FiberPoint::new(c(-0.15, 0.2), 1.0, 2.0)] {
        let fit = varpi_coefficients(&p, &cfg, 1e-4).unwrap();
        let kf = kahler_forms(&p, &cfg.hk).unwrap();
        let e3 = fit.omega3.distance(&kf.omega3) / kf.omega3.max_norm();
        let eh = fit.holomorphic.distance(&kf.holomorphic) / kf.holomorphic.max_norm();
        assert!(e3 < 1e-4, "t = {}: ω₃ relative error {e3:e}", p.t);
        assert!(eh < 1e-4, "t = {}: ϖ relative error {eh:e}", p.t);
    }
}

#[test]
fn fit_is_blind_to_the_ray_jumps() {
    let cfg = TwistorConfig::new();
    let p = FiberPoint::new(c(0.1, 0.3), 0.2, 0.5);
    // ray of β in the ζ-plane: ℝ₋Z_β = ℝ₋t
    let ray = (-p.t).arg();
    let mut below = default_samples(&p, &cfg);
    let idx = below
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1.arg() - ray).abs().total_cmp(&(b.1.arg() - ray).abs()))
        .unwrap()
        .0;
    below[idx] = Complex64::from_polar(1.0, ray - 0.08);
    let mut above = below.clone();
    above[idx] = Complex64::from_polar(1.0, ray + 0.08);
    let a = varpi_coefficients_at(&p, &cfg, 1e-4, &below, 1e-5).unwrap();
    let b = varpi_coefficients_at(&p, &cfg, 1e-4, &above, 1e-5).unwrap();
    let scale = a.omega3.max_norm();
    assert!(a.omega3.distance(&b.omega3) < 1e-5 * scale);
    assert!(a.holomorphic.distance(&b.holomorphic) < 1e-5 * a.holomorphic.max_norm());

    // while the coordinate itself does jump there
    let lo = log_x_beta_vee(&p, Complex64::from_polar(1.0, ray - 1e-4), &cfg).unwrap().log_value;
    let hi = log_x_beta_vee(&p, Complex64::from_polar(1.0, ray + 1e-4), &cfg).unwrap().log_value;
    let smooth_lo = log_x_beta_vee(&p, Complex64::from_polar(1.0, ray - 2e-4), &cfg).unwrap().log_value;
    assert!((hi - lo).norm() > 1e-2, "jump {}", (hi - lo).norm());
    assert!((lo - smooth_lo).norm() < 1e-2);
}

#[test]
fn halving_the_tolerance_stays_within_the_error_estimate() {
    let mut coarse = TwistorConfig::new();
    coarse.quad.tol = 1e-8;
    let mut fine = coarse;
    fine.quad.tol = 5e-9;
    let p = FiberPoint::new(c(0.12, 0.25), 0.4, 0.9);
    let charges = [Charge::BETA, -Charge::BETA, Charge::new(0, 1, 1), Charge::new(0, -1, 1), Charge::new(0, 1, -2)];
    let zetas = [c(0.3, 0.9), Complex64::from_polar(2.0, -1.1)];
    let mut cases = 0;
    for g in charges {
        for z in zetas {
            let a = ray_integral(g, &p, z, &coarse).unwrap();
            let b = ray_integral(g, &p, z, &fine).unwrap();
            assert!((a.value - b.value).norm() <= a.error, "{g} at {z}");
            assert!(a.value.norm() <= a.bound);
            cases += 1;
        }
    }
    assert_eq!(cases, 10);
}

#[test]
fn semiflat_limit_of_the_coordinate() {
    // with instantons switched off 𝒳_β∨ is the semi-flat exponential
    let mut cfg = TwistorConfig::new();
    cfg.hk = cfg.hk.semiflat_only();
    let p = FiberPoint::new(c(0.1, 0.3), 0.2, 0.5);
    let z = c(0.4, 0.6);
    let a = log_x_beta_vee(&p, z, &cfg).unwrap().log_value;
    let b = log_x_semiflat(Charge::BETA_VEE, &p, z, Convention::Standard).unwrap();
    assert_eq!(a, b);
    // far from t = 0 the instanton part is exponentially small
    let full = log_x_beta_vee(&FiberPoint::new(c(0.1, 3.0), 0.2, 0.5), z, &TwistorConfig::new()).unwrap();
    let sf = log_x_semiflat(Charge::BETA_VEE, &FiberPoint::new(c(0.1, 3.0), 0.2, 0.5), z, Convention::Standard).unwrap();
    assert!((full.log_value - sf).norm() < (-2.0 * PI * 2.9f64).exp());
}
