//! Density, cdf and survival functions.

use super::convert::{genf_to_orig_unchecked, gengamma_to_orig_unchecked};
use super::{softplus, Distribution};
use crate::specfun::{
    ln_beta, ln_gamma, ln_gamma_p, ln_gamma_q, ln_reg_inc_beta_pair, ln_std_normal_sf,
};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `Q(z, k)` or `P(z, k)` in log space, tolerating `z = ∞`.
fn ln_gamma_tail(z: f64, k: f64, upper: bool) -> f64 {
    if z.is_infinite() {
        return if upper { f64::NEG_INFINITY } else { 0.0 };
    }
    if upper {
        ln_gamma_q(z, k)
    } else {
        ln_gamma_p(z, k)
    }
}

/// ln S for the original generalized F, with `ln u` supplied.
pub(super) fn genf_orig_ln_survival(ln_u: f64, m1: f64, m2: f64) -> f64 {
    if ln_u == f64::NEG_INFINITY {
        return 0.0;
    }
    if ln_u == f64::INFINITY {
        return f64::NEG_INFINITY;
    }
    // x = 1/(1+u), y = u/(1+u), each formed without cancellation
    let (x, y) = if ln_u <= 0.0 {
        let x = 1.0 / (1.0 + ln_u.exp());
        (x, ln_u.exp() * x)
    } else {
        let y = 1.0 / (1.0 + (-ln_u).exp());
        ((-ln_u).exp() * y, y)
    };
    ln_reg_inc_beta_pair(x, y, m2, m1).0
}

pub(super) fn genf_orig_ln_u(t: f64, mu: f64, sigma: f64, m1: f64, m2: f64) -> f64 {
    (t.ln() - mu) / sigma + (m1 / m2).ln()
}

/// Gompertz cumulative hazard `(rate/shape)(e^(shape·t) − 1)`.
pub(super) fn gompertz_cum_hazard(shape: f64, rate: f64, t: f64) -> f64 {
    if shape == 0.0 {
        rate * t
    } else {
        rate / shape * (shape * t).exp_m1()
    }
}

impl Distribution {
    /// ln S(t). Returns `0` at `t = 0` and `NaN` for negative `t` or
    /// out-of-domain parameters.
    pub fn ln_survival(&self, t: f64) -> f64 {
        if t.is_nan() || t < 0.0 || !self.is_valid() {
            return f64::NAN;
        }
        if t == 0.0 {
            return 0.0;
        }
        match *self {
            Distribution::Exponential { rate } => -rate * t,
            Distribution::Weibull { shape, scale } => -(t / scale).powf(shape),
            Distribution::Gamma { shape, rate } => ln_gamma_tail(rate * t, shape, true),
            Distribution::Gompertz { shape, rate } => -gompertz_cum_hazard(shape, rate, t),
            Distribution::LogNormal { meanlog, sdlog } => {
                ln_std_normal_sf((t.ln() - meanlog) / sdlog)
            }
            Distribution::LogLogistic { shape, scale } => -softplus(shape * (t / scale).ln()),
            Distribution::GenGammaOrig { shape, scale, k } => {
                ln_gamma_tail((t / scale).powf(shape), k, true)
            }
            Distribution::GenGamma { mu, sigma, q } => {
                let k = 1.0 / (q * q);
                let w = (t.ln() - mu) / sigma;
                let z = (k.ln() + q * w).exp();
                ln_gamma_tail(z, k, q > 0.0)
            }
            Distribution::GenFOrig { mu, sigma, s1, s2 } => {
                genf_orig_ln_survival(genf_orig_ln_u(t, mu, sigma, s1, s2), s1, s2)
            }
            Distribution::GenF { mu, sigma, q, p } => {
                let o = genf_to_orig_unchecked(mu, sigma, q, p);
                genf_orig_ln_survival(genf_orig_ln_u(t, o.mu, o.sigma, o.s1, o.s2), o.s1, o.s2)
            }
        }
    }

    /// S(t) = P(T > t).
    pub fn survival(&self, t: f64) -> f64 {
        self.ln_survival(t).exp()
    }

    /// F(t), defined as `1 − S(t)`.
    pub fn cdf(&self, t: f64) -> f64 {
        1.0 - self.survival(t)
    }

    /// ln f(t) for `t > 0`.
    pub fn ln_pdf(&self, t: f64) -> f64 {
        if t.is_nan() || t < 0.0 || !self.is_valid() {
            return f64::NAN;
        }
        let lt = t.ln();
        match *self {
            Distribution::Exponential { rate } => rate.ln() - rate * t,
            Distribution::Gompertz { shape, rate } => {
                rate.ln() + shape * t - gompertz_cum_hazard(shape, rate, t)
            }
            _ if t == 0.0 => self.pdf_at_zero().ln(),
            Distribution::Weibull { shape, scale } => {
                let y = lt - scale.ln();
                shape.ln() - scale.ln() + (shape - 1.0) * y - (shape * y).exp()
            }
            Distribution::Gamma { shape, rate } => {
                shape * rate.ln() + (shape - 1.0) * lt - rate * t - ln_gamma(shape)
            }
            Distribution::LogNormal { meanlog, sdlog } => {
                let z = (lt - meanlog) / sdlog;
                -0.5 * z * z - LN_SQRT_2PI - sdlog.ln() - lt
            }
            Distribution::LogLogistic { shape, scale } => {
                let y = lt - scale.ln();
                shape.ln() - scale.ln() + (shape - 1.0) * y - 2.0 * softplus(shape * y)
            }
            Distribution::GenGammaOrig { shape, scale, k } => {
                let y = lt - scale.ln();
                shape.ln() - lt + shape * k * y - (shape * y).exp() - ln_gamma(k)
            }
            Distribution::GenGamma { mu, sigma, q } => {
                let k = 1.0 / (q * q);
                let qw = q * (lt - mu) / sigma;
                -(sigma * t).ln() + q.abs().ln() + k * k.ln() + k * (qw - qw.exp()) - ln_gamma(k)
            }
            Distribution::GenFOrig { mu, sigma, s1, s2 } => {
                let ln_u = genf_orig_ln_u(t, mu, sigma, s1, s2);
                -(sigma * t).ln() + s1 * ln_u - (s1 + s2) * softplus(ln_u) - ln_beta(s1, s2)
            }
            Distribution::GenF { mu, sigma, q, p } => {
                let o = genf_to_orig_unchecked(mu, sigma, q, p);
                let delta = (q * q + 2.0 * p).sqrt();
                let ln_v = (o.s1 / o.s2).ln() + delta * (lt - mu) / sigma;
                -(sigma * t).ln() + delta.ln() + o.s1 * ln_v
                    - (o.s1 + o.s2) * softplus(ln_v)
                    - ln_beta(o.s1, o.s2)
            }
        }
    }

    /// Density f(t).
    pub fn pdf(&self, t: f64) -> f64 {
        self.ln_pdf(t).exp()
    }

    /// Limit of the density at the origin for the families whose log-density
    /// formula involves `ln t`.
    fn pdf_at_zero(&self) -> f64 {
        // near zero f(t) ~ c·t^power
        let (power, ln_c) = match *self {
            Distribution::Weibull { shape, scale } | Distribution::LogLogistic { shape, scale } => {
                (shape - 1.0, shape.ln() - scale.ln())
            }
            Distribution::Gamma { shape, rate } => (shape - 1.0, rate.ln()),
            Distribution::GenGammaOrig { shape, scale, k } => {
                (shape * k - 1.0, shape.ln() - scale.ln() - ln_gamma(k))
            }
            Distribution::GenFOrig { mu, sigma, s1, s2 } => (
                s1 / sigma - 1.0,
                s1 * (s1 / s2).ln() - mu * s1 / sigma - sigma.ln() - ln_beta(s1, s2),
            ),
            Distribution::GenGamma { mu, sigma, q } if q > 0.0 => {
                return Distribution::from(gengamma_to_orig_unchecked(mu, sigma, q)).pdf_at_zero();
            }
            Distribution::GenF { mu, sigma, q, p } => {
                return Distribution::from(genf_to_orig_unchecked(mu, sigma, q, p)).pdf_at_zero();
            }
            _ => return 0.0,
        };
        if power > 0.0 {
            0.0
        } else if power < 0.0 {
            f64::INFINITY
        } else {
            ln_c.exp()
        }
    }
}
