//! Quantiles and the inverse survival function.

use super::Distribution;
use crate::roots::brent;
use crate::specfun::std_normal_quantile;

/// Smallest and largest `ln t` searched by the bracketing root finder.
const LN_T_MIN: f64 = -745.0;
const LN_T_MAX: f64 = 709.7;

impl Distribution {
    /// `F⁻¹(p)`: `0` at `p = 0`, `+∞` at `p = 1`, `NaN` outside `[0, 1]`.
    pub fn quantile(&self, p: f64) -> f64 {
        if p.is_nan() || !(0.0..=1.0).contains(&p) {
            return f64::NAN;
        }
        if p == 1.0 {
            return f64::INFINITY;
        }
        self.inverse_ln_survival((-p).ln_1p())
    }

    /// The `t` with `ln S(t) = ln_s`, for `ln_s ≤ 0`.
    ///
    /// Working with the log survival keeps full precision far into the upper
    /// tail, where `1 − p` would round to zero. Exponential, Weibull,
    /// Gompertz, log-normal and log-logistic invert in closed form; the other
    /// families use Brent's method on `ln t`.
    pub fn inverse_ln_survival(&self, ln_s: f64) -> f64 {
        if ln_s.is_nan() || ln_s > 0.0 || !self.is_valid() {
            return f64::NAN;
        }
        if ln_s == 0.0 {
            return 0.0;
        }
        if ln_s == f64::NEG_INFINITY {
            return f64::INFINITY;
        }
        let h = -ln_s; // cumulative hazard at the answer
        match *self {
            Distribution::Exponential { rate } => h / rate,
            Distribution::Weibull { shape, scale } => scale * h.powf(1.0 / shape),
            Distribution::Gompertz { shape, rate } => {
                if shape == 0.0 {
                    h / rate
                } else if shape < 0.0 && shape * h / rate <= -1.0 {
                    // the defective part: survival never drops this low
                    f64::INFINITY
                } else {
                    (shape * h / rate).ln_1p() / shape
                }
            }
            Distribution::LogNormal { meanlog, sdlog } => {
                let z = if ln_s > -std::f64::consts::LN_2 {
                    std_normal_quantile(-ln_s.exp_m1())
                } else if ln_s >= super::LN_MIN_SURVIVAL {
                    -std_normal_quantile(ln_s.exp())
                } else {
                    return self.inverse_by_root(ln_s, meanlog);
                };
                (meanlog + sdlog * z).exp()
            }
            Distribution::LogLogistic { shape, scale } => {
                // softplus(y) = h  ⇔  y = ln(e^h − 1)
                let y = if h > 30.0 {
                    h + (-(-h).exp()).ln_1p()
                } else {
                    h.exp_m1().ln()
                };
                scale * (y / shape).exp()
            }
            Distribution::Gamma { shape, rate } => self.inverse_by_root(ln_s, (shape / rate).ln()),
            Distribution::GenGammaOrig { scale, .. } => self.inverse_by_root(ln_s, scale.ln()),
            Distribution::GenGamma { mu, .. }
            | Distribution::GenFOrig { mu, .. }
            | Distribution::GenF { mu, .. } => self.inverse_by_root(ln_s, mu),
        }
    }

    /// Solve `ln S(e^y) = ln_s` for `y`, widening a bracket around `center`.
    fn inverse_by_root(&self, ln_s: f64, center: f64) -> f64 {
        let f = |y: f64| self.ln_survival(y.exp()) - ln_s;
        let center = center.clamp(LN_T_MIN + 1.0, LN_T_MAX - 1.0);
        let mut lo = center - 1.0;
        let mut hi = center + 1.0;
        let mut width = 1.0;
        // f decreases in y: need f(lo) > 0 > f(hi)
        while f(lo) <= 0.0 {
            if lo <= LN_T_MIN {
                return 0.0;
            }
            width *= 2.0;
            hi = lo;
            lo = (lo - width).max(LN_T_MIN);
        }
        while f(hi) > 0.0 {
            if hi >= LN_T_MAX {
                return f64::INFINITY;
            }
            width *= 2.0;
            lo = hi;
            hi = (hi + width).min(LN_T_MAX);
        }
        match brent(f, lo, hi, 1e-15) {
            Some(y) => y.exp(),
            None => f64::NAN,
        }
    }
}
