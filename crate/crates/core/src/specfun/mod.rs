//! Special functions behind the closed-form residual-life expressions.
//!
//! Everything here is a pure function of `f64` arguments. Domain violations
//! produce `NaN` rather than panicking, so callers can propagate degenerate
//! inputs through a whole table without special casing.
//!
//! Argument order for the incomplete gamma functions follows the integral
//! `Γ(x, a) = ∫ₓ^∞ t^(a−1) e^(−t) dt`: the lower integration limit comes
//! first, the shape second.

mod beta;
mod expint;
mod gamma;
mod hypergeometric;
mod normal;

pub use beta::{ln_beta, ln_reg_inc_beta_pair, reg_inc_beta, reg_inc_beta_complement};
pub use expint::{exp_integral_e1, exp_scaled_e1};
pub use gamma::{
    gamma_p, gamma_q, ln_gamma, ln_gamma_p, ln_gamma_q, ln_lower_inc_gamma, ln_upper_inc_gamma,
    lower_inc_gamma, upper_inc_gamma,
};
pub use hypergeometric::gauss_2f1;
pub use normal::{
    erf, erfc, ln_std_normal_cdf, ln_std_normal_sf, std_normal_cdf, std_normal_quantile,
    std_normal_sf,
};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Iteration cap for series and continued fractions.
pub(crate) const MAX_ITER: usize = 10_000;

/// Floor used by the modified Lentz algorithm to avoid division by zero.
pub(crate) const TINY: f64 = 1e-300;
