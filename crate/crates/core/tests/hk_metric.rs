use std::f64::consts::{FRAC_PI_4, PI};

use conifold_hk::ask::{region_classify, Region};
use conifold_hk::forms::*;
use conifold_hk::hk::*;
use conifold_hk::Complex64;
use conifold_oracle as oracle;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Points of M₊ off the wall, with θ_β = 0 and random θ_β∨.
fn n0_panel(seed: u64, n: usize) -> Vec<FiberPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let t = c(rng.random_range(-0.45..0.45), rng.random_range(-0.4..0.1));
        let wall = 2.0 * (2.0 * PI * Complex64::i() * t).exp().re - 1.0;
        if region_classify(t) == Region::MPlus && wall > 1e-2 && t.norm() > 1e-3 {
            out.push(FiberPoint::new(t, rng.random_range(-PI..PI), 0.0));
        }
    }
    out
}

#[test]
fn metric_is_positive_definite_on_the_zero_section_side() {
    let cfg = HkConfig::new();
    for p in n0_panel(21, 30) {
        let g = metric_gn(&p, &cfg).unwrap();
        assert!(g.is_symmetric());
        let eig = g.eigenvalues();
        assert!(eig.iter().all(|e| *e > 0.0), "t = {}: {eig:?}", p.t);
    }
}

#[test]
fn metric_spot_points() {
    let cfg = HkConfig::new();
    let g = metric_gn(&FiberPoint::on_lagrangian(c(0.0, 0.05)), &cfg).unwrap();
    assert_eq!(g.definiteness(), Definiteness::Positive);
    // N changes sign with Im τ on M₋ and the metric turns negative definite
    let g = metric_gn(&FiberPoint::on_lagrangian(c(0.2, 0.1)), &cfg).unwrap();
    assert_eq!(g.definiteness(), Definiteness::Negative);
}

#[test]
fn flavor_charges_decouple_bit_for_bit() {
    let base = HkConfig::new();
    let full = HkConfig::new().with_spectrum(Spectrum::Full);
    for p in n0_panel(22, 8) {
        let p = FiberPoint::new(p.t, 0.4, 1.1).with_theta_delta(0.3);
        let a = metric_gn(&p, &base).unwrap();
        let b = metric_gn(&p, &full).unwrap();
        assert_eq!(a.as_rows(), b.as_rows());
    }
}

#[test]
fn two_routes_for_the_holomorphic_form() {
    let cfg = HkConfig::new();
    for p in n0_panel(23, 10) {
        let p = FiberPoint::new(p.t, 0.8, -0.6).with_theta_delta(0.25);
        let by_n = kahler_forms(&p, &cfg).unwrap();
        let by_charge = holomorphic_form_by_charge(&p, &cfg).unwrap();
        let scale = by_n.holomorphic.max_norm();
        assert!(by_n.holomorphic.distance(&by_charge) < 1e-10 * scale, "t = {}", p.t);
        let w3 = omega3_by_charge(&p, &cfg).unwrap();
        assert!(by_n.omega3.distance(&w3) < 1e-10 * by_n.omega3.max_norm());
    }
}

#[test]
fn real_forms_are_real() {
    let cfg = HkConfig::new();
    let p = FiberPoint::new(c(0.1, -0.2), 0.3, 0.9);
    let f = kahler_forms(&p, &cfg).unwrap();
    for w in [f.omega1, f.omega2, f.omega3] {
        assert!(w.to_real_matrix(1e-12).is_some());
    }
}

#[test]
fn truncation_doubling_stays_within_tail_bound() {
    for p in n0_panel(24, 10) {
        let p = FiberPoint::new(p.t, 0.5, 0.7);
        let coarse = metric_gn_report(&p, &HkConfig::new().with_cuts(4, 3)).unwrap();
        let fine = metric_gn_report(&p, &HkConfig::new().with_cuts(8, 6)).unwrap();
        let diff = coarse.metric.max_abs_diff(&fine.metric);
        assert!(diff <= coarse.tail_bound, "t = {}: {diff:e} > {:e}", p.t, coarse.tail_bound);
    }
}

#[test]
fn instanton_sums_match_brute_force_bessel_sums() {
    let cfg = HkConfig::new();
    let p = FiberPoint::new(c(0.15, 0.2), 0.0, 0.9).with_theta_delta(0.4);
    for n in -3..=3 {
        let v = v_inst(n, &p, &cfg).unwrap().value;
        let v_ref = oracle::v_sum(n, p.t, 0.9, 0.4, 1.0);
        assert!((v - v_ref).abs() < 1e-12, "n = {n}");
        let a = a_inst_coeff(n, &p, &cfg).unwrap().value;
        let a_ref = oracle::c_sum(n, p.t, 0.9, 0.4, 1.0);
        assert!((a - a_ref).norm() < 1e-12, "n = {n}: {a} vs {a_ref}");
    }
}

#[test]
fn ooguri_vafa_smoothing() {
    let cfg = HkConfig::new();
    let (theta_bv, theta_b) = (0.3, 0.7);
    let lim = eta_limits(theta_b, 0.0, &cfg).unwrap();
    // independent Bessel sums at t = 0
    let s = oracle::v_sum_at_origin(theta_b, 0.0, 12);
    assert!((lim.v_sum - s).abs() < 1e-12);
    let want2 = -s / (2.0 * PI);
    let want3 = 0.5 * s;

    let mut eta1 = Vec::new();
    let mut eta2 = Vec::new();
    let mut eta3 = Vec::new();
    for k in 1..=4 {
        let t = Complex64::from_polar(10f64.powi(-k), FRAC_PI_4);
        let e = smoothing_eta(&FiberPoint::new(t, theta_bv, theta_b), &cfg).unwrap();
        eta1.push(e.eta1.max_norm());
        eta2.push(e.eta2.coeff(DT, D_THETA_BETA).re);
        eta3.push(e.eta3.coeff(DT, DT_BAR).im);
    }
    assert!(eta1.windows(2).all(|w| w[1] < w[0]), "{eta1:?}");
    assert!(eta1[3] < 1e-5);
    // the approach is linear in t, so one Richardson step removes it
    let rich2 = (10.0 * eta2[3] - eta2[2]) / 9.0;
    let rich3 = (10.0 * eta3[3] - eta3[2]) / 9.0;
    assert!((rich2 - want2).abs() < 1e-6, "{rich2} vs {want2}");
    assert!((rich3 - want3).abs() < 1e-6, "{rich3} vs {want3}");
    // and the raw values close in at the expected O(|t|) rate
    assert!((eta2[3] - want2).abs() < 1e-4 && (eta3[3] - want3).abs() < 1e-4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lagrangian_has_no_connection_terms(re in -0.45f64..0.45, im in -0.4f64..0.6) {
        let t = c(re, im);
        prop_assume!(t.norm() > 0.02 && region_classify(t) != Region::Wall);
        let w = w_coeffs(&FiberPoint::on_lagrangian(t), &HkConfig::new()).unwrap();
        // A_n vanishes, only the −iV dθ_β part survives
        prop_assert!(w.w_inst.0[DT].norm() == 0.0 && w.w_inst.0[DT_BAR].norm() == 0.0);
    }

    #[test]
    fn metric_is_symmetric(re in -0.45f64..0.45, im in -0.4f64..0.6, a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let t = c(re, im);
        let wall = (2.0 * (2.0 * PI * Complex64::i() * t).exp().re - 1.0).abs();
        prop_assume!(t.norm() > 0.02 && wall > 1e-3);
        if let Ok(g) = metric_gn(&FiberPoint::new(t, a, b), &HkConfig::new()) {
            prop_assert!(g.is_symmetric());
        }
    }
}
