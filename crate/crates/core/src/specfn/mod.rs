//! Special functions used throughout the crate.

pub mod bernoulli;
pub mod bessel;
pub mod expint;
pub mod gamma;
pub mod msine;
pub mod polylog;
pub mod qdilog;

pub use bernoulli::{b22, b33, bernoulli_numbers, gen_bernoulli_poly};
pub use bessel::{bessel_k, bessel_k01_scaled, bessel_k_bound, bessel_k_scaled, Order};
pub use expint::exp_int_e1;
pub use gamma::{
    binet_mu, binet_mu_asymptotic, binet_mu_continued, digamma, hurwitz_zeta, ln_gamma, AsymptoticValue, STIRLING,
};
pub use msine::{log_double_sine, log_triple_sine, log_triple_sine_confluent, multiple_sine};
pub use polylog::{li2, li2_side, li3, li3_side, Side};
pub use qdilog::{
    difference_equation_residual, f_non_pert, f_non_pert_path, log_quantum_dilog_h, log_triple_g3,
    log_triple_g3_with, q_correction, q_correction_with, quantum_dilog_h, triple_g3, wrap_log,
    CorrectionConstant, G3Shift, OmegaPair,
};
