//! Means and closed-form mean residual life.

use std::f64::consts::PI;

use super::convert::{genf_to_orig_unchecked, gengamma_to_orig_unchecked};
use super::eval::{genf_orig_ln_survival, genf_orig_ln_u};
use super::{Distribution, LN_MIN_SURVIVAL};
use crate::residual::mrl_quadrature_oracle;
use crate::specfun::{
    exp_scaled_e1, gauss_2f1, ln_beta, ln_gamma, ln_reg_inc_beta_pair, ln_std_normal_sf,
    ln_upper_inc_gamma,
};

/// Below this `C` the generalized F tail integral is taken as the complete
/// beta function minus its lower part.
const GENF_SMALL_C: f64 = 0.05;

impl Distribution {
    /// E[T], or `NaN` when the mean does not exist.
    pub fn mean(&self) -> f64 {
        if !self.is_valid() {
            return f64::NAN;
        }
        match *self {
            Distribution::Exponential { rate } => 1.0 / rate,
            Distribution::Weibull { shape, scale } => scale * ln_gamma(1.0 + 1.0 / shape).exp(),
            Distribution::Gamma { shape, rate } => shape / rate,
            Distribution::Gompertz { shape, rate } => {
                if shape > 0.0 {
                    exp_scaled_e1(rate / shape) / shape
                } else if shape == 0.0 {
                    1.0 / rate
                } else {
                    f64::NAN
                }
            }
            Distribution::LogNormal { meanlog, sdlog } => (meanlog + 0.5 * sdlog * sdlog).exp(),
            Distribution::LogLogistic { shape, scale } => {
                if shape > 1.0 {
                    let b = PI / shape;
                    scale * b / b.sin()
                } else {
                    f64::NAN
                }
            }
            Distribution::GenGammaOrig { shape, scale, k } => {
                scale * (ln_gamma(k + 1.0 / shape) - ln_gamma(k)).exp()
            }
            Distribution::GenGamma { mu, sigma, q } => {
                // T = e^μ (Z/k)^(σ/Q) with Z ~ Gamma(k)
                let k = 1.0 / (q * q);
                let e = sigma / q;
                if k + e <= 0.0 {
                    return f64::NAN;
                }
                (mu - e * k.ln() + ln_gamma(k + e) - ln_gamma(k)).exp()
            }
            Distribution::GenFOrig { mu, sigma, s1, s2 } => genf_orig_mean(mu, sigma, s1, s2),
            Distribution::GenF { mu, sigma, q, p } => {
                let o = genf_to_orig_unchecked(mu, sigma, q, p);
                genf_orig_mean(o.mu, o.sigma, o.s1, o.s2)
            }
        }
    }

    /// Mean residual life `E[T − x | T > x]` from the family's closed form.
    ///
    /// At `x = 0` this is the mean. Returns `NaN` when the mean does not
    /// exist, when `x` is negative, and when `S(x)` has underflowed below the
    /// smallest normal double. Prentice generalized gamma with `Q < 0` has no
    /// closed form and is integrated numerically.
    pub fn mrl_closed_form(&self, x: f64) -> f64 {
        if x.is_nan() || x < 0.0 || !self.is_valid() {
            return f64::NAN;
        }
        if x == 0.0 {
            return self.mean();
        }
        let ln_s = self.ln_survival(x);
        if ln_s.is_nan() || ln_s < LN_MIN_SURVIVAL {
            return f64::NAN;
        }
        match *self {
            Distribution::Exponential { rate } => 1.0 / rate,
            Distribution::Weibull { shape, scale } => {
                // (λ/α) Γ(z, 1/α) e^z with z = (x/λ)^α = −ln S(x)
                (scale / shape) * (ln_upper_inc_gamma(-ln_s, 1.0 / shape) - ln_s).exp()
            }
            Distribution::Gamma { shape, rate } => {
                let y = x * rate;
                (ln_upper_inc_gamma(y, shape + 1.0) - ln_upper_inc_gamma(y, shape)).exp() / rate - x
            }
            Distribution::Gompertz { shape, rate } => {
                if shape > 0.0 {
                    exp_scaled_e1(rate / shape * (shape * x).exp()) / shape
                } else if shape == 0.0 {
                    1.0 / rate
                } else {
                    f64::NAN
                }
            }
            Distribution::LogNormal { meanlog, sdlog } => {
                let s2 = sdlog * sdlog;
                let ln_num = meanlog + 0.5 * s2 + ln_std_normal_sf((x.ln() - meanlog - s2) / sdlog);
                (ln_num - ln_s).exp() - x
            }
            Distribution::LogLogistic { shape, scale } => {
                if shape <= 1.0 {
                    return f64::NAN;
                }
                // (λ/α) B_w(1 − 1/α, 1/α) (1 + u) with u = (x/λ)^α, w = 1/(1+u)
                let ln_u = shape * (x / scale).ln();
                let (w, v) = split_unit(ln_u);
                let (a, b) = (1.0 - 1.0 / shape, 1.0 / shape);
                let ln_inc = ln_reg_inc_beta_pair(w, v, a, b).0 + ln_beta(a, b);
                ((scale / shape).ln() + ln_inc - ln_s).exp()
            }
            Distribution::GenGammaOrig { shape, scale, k } => gengamma_orig_mrl(shape, scale, k, x),
            Distribution::GenGamma { mu, sigma, q } => {
                if q > 0.0 {
                    let o = gengamma_to_orig_unchecked(mu, sigma, q);
                    gengamma_orig_mrl(o.shape, o.scale, o.k, x)
                } else if self.mean().is_nan() {
                    f64::NAN
                } else {
                    mrl_quadrature_oracle(self, x).value
                }
            }
            Distribution::GenFOrig { mu, sigma, s1, s2 } => genf_orig_mrl(mu, sigma, s1, s2, x),
            Distribution::GenF { mu, sigma, q, p } => {
                let o = genf_to_orig_unchecked(mu, sigma, q, p);
                genf_orig_mrl(o.mu, o.sigma, o.s1, o.s2, x)
            }
        }
    }
}

/// `(1/(1+u), u/(1+u))` from `ln u`, each without cancellation.
fn split_unit(ln_u: f64) -> (f64, f64) {
    if ln_u <= 0.0 {
        let w = 1.0 / (1.0 + ln_u.exp());
        (w, ln_u.exp() * w)
    } else {
        let v = 1.0 / (1.0 + (-ln_u).exp());
        ((-ln_u).exp() * v, v)
    }
}

/// `a Γ(z, k + 1/b) / Γ(z, k) − x` with `z = (x/a)^b`.
fn gengamma_orig_mrl(b: f64, a: f64, k: f64, x: f64) -> f64 {
    let z = (x / a).powf(b);
    a * (ln_upper_inc_gamma(z, k + 1.0 / b) - ln_upper_inc_gamma(z, k)).exp() - x
}

fn genf_orig_mean(beta: f64, sigma: f64, m1: f64, m2: f64) -> f64 {
    if m2 <= sigma {
        return f64::NAN;
    }
    (beta + sigma * (m2 / m1).ln() + ln_beta(m1 + sigma, m2 - sigma) - ln_beta(m1, m2)).exp()
}

/// Generalized F mean residual life for `x > 0`.
///
/// With `C = e^(−β/σ)(m₁/m₂)x^(1/σ)` the partial expectation is
/// `e^β (m₂/m₁)^σ / B(m₁, m₂) · ∫_C^∞ u^(m₁+σ−1) (1+u)^(−m₁−m₂) du`. The tail
/// integral is
///
/// ```text
/// C^(σ−m₂)/(m₂−σ) · ₂F₁(m₁+m₂, m₂−σ; m₂−σ+1; −1/C)
/// ```
///
/// and for small `C`, where that series converges slowly, it is evaluated as
/// `B(m₁+σ, m₂−σ) − C^(m₁+σ)/(m₁+σ) · ₂F₁(m₁+m₂, m₁+σ; m₁+σ+1; −C)`.
fn genf_orig_mrl(beta: f64, sigma: f64, m1: f64, m2: f64, x: f64) -> f64 {
    if m2 <= sigma {
        return f64::NAN;
    }
    let ln_c = genf_orig_ln_u(x, beta, sigma, m1, m2);
    let ln_s = genf_orig_ln_survival(ln_c, m1, m2);
    let ln_tail = if ln_c >= GENF_SMALL_C.ln() {
        let e = m2 - sigma;
        -e * ln_c - e.ln() + gauss_2f1(m1 + m2, e, e + 1.0, -(-ln_c).exp()).ln()
    } else {
        let a = m1 + sigma;
        let lower = (a * ln_c - a.ln()).exp() * gauss_2f1(m1 + m2, a, a + 1.0, -ln_c.exp());
        let ln_full = ln_beta(a, m2 - sigma);
        ln_full + (-lower * (-ln_full).exp()).ln_1p()
    };
    let ln_partial = beta + sigma * (m2 / m1).ln() - ln_beta(m1, m2) + ln_tail;
    (ln_partial - ln_s).exp() - x
}
