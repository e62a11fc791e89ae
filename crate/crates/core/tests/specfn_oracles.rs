use std::f64::consts::PI;

use conifold_hk::specfn::*;
use conifold_hk::{Budget, Complex64, Error};
use conifold_oracle as oracle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn binet_against_integral_on_random_panel() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let z = c(rng.random_range(0.5..20.0), rng.random_range(-20.0..20.0));
        let d = (binet_mu(z).unwrap() - oracle::binet_integral(z)).norm();
        worst = worst.max(d);
    }
    assert!(worst < 1e-10, "worst {worst:e}");
    let z = c(2.0, 3.0);
    assert!((binet_mu(z).unwrap() - oracle::binet_integral(z)).norm() < 1e-10);
}

#[test]
fn binet_asymptotic_at_ten() {
    let exact = binet_mu(c(10.0, 0.0)).unwrap();
    let a = binet_mu_asymptotic(c(10.0, 0.0), 3).unwrap();
    assert!((a.value - exact).norm() < 1e-9);
}

#[test]
fn bessel_against_integral() {
    assert!((bessel_k(Order::Zero, 1.0).unwrap() - 0.421_024_438_240_708_3).abs() < 1e-15);
    assert!((bessel_k(Order::One, 1.0).unwrap() - 0.601_907_230_197_234_6).abs() < 1e-15);
    for &x in &[0.05, 0.3, 1.0, 1.99, 2.01, 3.7, 8.0, 25.0, 60.0] {
        for nu in [0u32, 1] {
            let order = Order::try_from(nu).unwrap();
            let a = bessel_k(order, x).unwrap();
            let b = oracle::bessel_k_integral(nu, x);
            assert!((a - b).abs() <= 1e-13 * b, "nu={nu} x={x}: {a} {b}");
        }
    }
    let k50 = bessel_k(Order::Zero, 50.0).unwrap();
    let lead = (PI / 100.0).sqrt() * (-50.0f64).exp();
    assert!(k50.is_finite() && (k50 / lead - 1.0).abs() < 0.01);
    assert!(matches!(bessel_k(Order::Zero, 0.0), Err(Error::Domain(_))));
}

#[test]
fn bessel_derivative_identity() {
    let h = 1e-5;
    for k in 0..20 {
        let x = 0.5 + 9.5 * k as f64 / 19.0;
        let d = (bessel_k(Order::Zero, x + h).unwrap() - bessel_k(Order::Zero, x - h).unwrap()) / (2.0 * h);
        assert!((d + bessel_k(Order::One, x).unwrap()).abs() < 1e-7);
    }
}

#[test]
fn exponential_integral() {
    assert!((exp_int_e1(1.0).unwrap() - oracle::exp_int_integral(1.0)).abs() < 1e-15);
    for &x in &[0.01, 0.2, 0.9, 1.1, 3.0, 10.0, 40.0] {
        let a = exp_int_e1(x).unwrap();
        let o = oracle::exp_int_integral(x);
        assert!((a - o).abs() <= 1e-13 * a, "x={x}: {a} {o}");
        assert!(a < (-x).exp() * (1.0 + 1.0 / x).ln());
    }
    assert!(exp_int_e1(10.0).unwrap() < 1.1f64.ln());
    let e = exp_int_e1(0.01).unwrap();
    assert!((e / oracle::exp_int_series(0.01) - 1.0).abs() < 1e-12);
    assert!(matches!(exp_int_e1(-1.0), Err(Error::Domain(_))));
}

#[test]
fn polylogs_against_integral() {
    let pts = [
        c(0.3, 0.1),
        c(-0.8, 0.4),
        c(0.9, -0.6),
        c(1.5, 0.7),
        c(-3.0, -2.0),
        c(0.99, 0.02),
        c(5.0, 0.4),
        c(-0.5, 0.0),
        c(0.0, 1.0),
        c(1.2, -0.1),
    ];
    for z in pts {
        assert!((li2(z).unwrap() - oracle::polylog_integral(2, z)).norm() < 1e-12, "li2 {z}");
        assert!((li3(z).unwrap() - oracle::polylog_integral(3, z)).norm() < 1e-12, "li3 {z}");
    }
    assert_eq!(li2(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
    assert!((li2(c(0.5, 0.0)).unwrap().re - 0.582_240_526_465_012_5).abs() < 1e-15);
    assert!((li3(c(1.0, 0.0)).unwrap().re - 1.202_056_903_159_594_3).abs() < 1e-15);
}

#[test]
fn polylog_theta_derivative() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let z = Complex64::from_polar(rng.random_range(0.1..1.8), rng.random_range(0.3..2.9));
        let h = 1e-5;
        let d = (li3(z + h).unwrap() - li3(z - h).unwrap()) / (2.0 * h);
        assert!((d - li2(z).unwrap() / z).norm() < 1e-7);
    }
}

#[test]
fn generalized_bernoulli_against_series_division() {
    let one = c(1.0, 0.0);
    assert!((gen_bernoulli_poly(2, c(0.5, 0.0), &[one, one]).unwrap() - c(1.0 / 12.0, 0.0)).norm() < 1e-15);
    assert!((gen_bernoulli_poly(0, c(0.5, 0.0), &[one, one]).unwrap() - one).norm() < 1e-15);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let mut rc = || c(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
        let (z, w1, w2, w3) = (rc(), rc(), rc(), rc());
        for n in 0..5 {
            let a = gen_bernoulli_poly(n, z, &[w1, w2]).unwrap();
            let b = oracle::bernoulli_series(n, z, &[w1, w2]);
            assert!((a - b).norm() < 1e-10 * (1.0 + b.norm()), "r=2 n={n}");
            let a = gen_bernoulli_poly(n, z, &[w1, w2, w3]).unwrap();
            let b = oracle::bernoulli_series(n, z, &[w1, w2, w3]);
            assert!((a - b).norm() < 1e-10 * (1.0 + b.norm()), "r=3 n={n}");
        }
        let s = gen_bernoulli_poly(2, z, &[w2, w1]).unwrap();
        assert!((gen_bernoulli_poly(2, z, &[w1, w2]).unwrap() - s).norm() < 1e-13);
    }
    assert!(gen_bernoulli_poly(2, one, &[one, c(0.0, 0.0)]).is_err());
}

/// (z, periods) pairs on which both the product and the Barnes integral apply.
fn multiple_sine_panel() -> Vec<(Complex64, Vec<Complex64>)> {
    vec![
        (c(0.5, 0.5), vec![c(1.0, 0.0), c(0.0, 1.0)]),
        (c(0.3, 0.2), vec![c(1.0, 0.0), c(0.0, 1.0)]),
        (c(0.7, -0.1), vec![c(1.0, 0.0), c(0.2, 0.9)]),
        (c(0.4, 0.6), vec![c(0.8, 0.6), c(0.5, -0.4)]),
        (c(0.2, 0.1), vec![c(1.0, 0.0), c(0.45, -0.35)]),
        (c(0.6, 0.3), vec![c(1.0, 0.0), c(0.3, 1.0), c(0.8, -0.5)]),
        (c(0.3, 0.4), vec![c(0.5, 0.5), c(0.5, 0.5), c(1.0, 0.0)]),
        (c(0.9, 0.2), vec![c(0.2, 0.6), c(0.2, 0.6), c(1.0, 0.0)]),
        (c(0.5, -0.2), vec![c(1.0, 0.3), c(1.0, 0.3), c(0.4, -0.5)]),
        (c(1.1, 0.2), vec![c(1.0, 0.0), c(0.7, 0.7), c(0.6, -0.3)]),
    ]
}

#[test]
fn multiple_sine_against_barnes_integral() {
    let b = Budget::default();
    for (z, om) in multiple_sine_panel() {
        let prod = multiple_sine(z, &om, &b).unwrap();
        let quad = oracle::log_multiple_sine(z, &om).unwrap().exp();
        assert!((prod - quad).norm() < 1e-9 * quad.norm().max(1.0), "z={z} {om:?}: {prod} vs {quad}");
    }
}

#[test]
fn multiple_sine_symmetry_and_scaling() {
    let b = Budget::default();
    let (z, w1, w2) = (c(0.31, 0.22), c(1.0, 0.2), c(-0.4, 0.9));
    let a = multiple_sine(z, &[w1, w2], &b).unwrap();
    assert!((a - multiple_sine(z, &[w2, w1], &b).unwrap()).norm() < 1e-12 * a.norm());
    let k = c(2.0, 1.0);
    assert!((a - multiple_sine(k * z, &[k * w1, k * w2], &b).unwrap()).norm() < 1e-11 * a.norm());
}

#[test]
fn quantum_dilog_symmetry_and_rescaling() {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut done = 0;
    while done < 20 {
        let w1 = Complex64::from_polar(rng.random_range(0.5..2.0), rng.random_range(-1.2..1.2));
        let w2 = Complex64::from_polar(rng.random_range(0.5..2.0), rng.random_range(-1.2..1.2));
        if ((w1 / w2).arg()).abs() < 0.2 {
            continue;
        }
        let t = c(rng.random_range(-0.8..0.8), rng.random_range(-0.8..0.8));
        let k = Complex64::from_polar(rng.random_range(0.5..2.0), rng.random_range(-1.0..1.0));
        let om = OmegaPair::new(w1, w2).unwrap();
        let h = quantum_dilog_h(t, om, &b).unwrap();
        let hs = quantum_dilog_h(t, om.swapped(), &b).unwrap();
        let hr = quantum_dilog_h(k * t, om.scaled(k), &b).unwrap();
        let scale = h.norm().max(1.0);
        assert!((h - hs).norm() < 1e-10 * scale, "swap {t} {w1} {w2}: {h} {hs}");
        assert!((h - hr).norm() < 1e-10 * scale, "scale {t} {w1} {w2} {k}: {h} {hr}");
        done += 1;
    }
}

#[test]
fn q_correction_term_by_term() {
    let (t, w1, w2) = (c(0.3, 0.5), c(1.0, 0.0), -c(0.0, 0.7));
    let q = q_correction(t, w1, w2).unwrap();
    let x = (2.0 * PI * c(0.0, 1.0) * t / w1).exp();
    let expected = -w1 / (2.0 * PI * c(0.0, 1.0) * w2) * oracle::polylog_integral(2, x)
        - 0.5 * (c(1.0, 0.0) - x).ln()
        + PI / 12.0 * w2 / w1;
    assert!((q - expected).norm() < 1e-12);
}

#[test]
fn difference_equation_on_random_panel() {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..10 {
        let lambda = Complex64::from_polar(rng.random_range(1.0..6.0), rng.random_range(0.3..2.8));
        let t = c(rng.random_range(-0.5..0.5), rng.random_range(0.1..0.9));
        let r = difference_equation_residual(lambda, t, &b).unwrap();
        assert!(r < 1e-8, "λ={lambda} t={t}: {r:e}");
    }
}

#[test]
fn triple_g3_scaling_covariance() {
    // G₃ is built from rescaling-invariant pieces
    let b = Budget::default();
    let (z, w1, w2, k) = (c(0.3, 0.4), c(0.5, 0.5), c(1.0, 0.0), c(1.3, -0.4));
    let a = log_triple_g3(z, w1, w2, &b).unwrap();
    let s = log_triple_g3(k * z, k * w1, k * w2, &b).unwrap();
    assert!(wrap_log(a - s).norm() < 1e-10);
}

#[test]
fn pole_lattice_errors() {
    let b = Budget::default();
    let om = OmegaPair::new(c(1.0, 0.0), c(0.3, 0.8)).unwrap();
    assert!(matches!(quantum_dilog_h(c(1.0, 0.0), om, &b), Err(Error::Pole(_))));
    assert!(matches!(triple_g3(c(0.0, 0.0), c(0.5, 0.5), c(1.0, 0.0), &b), Err(Error::Pole(_))));
}
