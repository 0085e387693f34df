use super::{EULER_GAMMA, MAX_ITER, TINY};

/// `Σ_{k≥1} (−1)^(k+1) z^k / (k · k!)`, used for `z < 1`.
fn e1_series_tail(z: f64) -> f64 {
    let mut sum = 0.0;
    let mut fact_term = 1.0; // (−1)^(k+1) z^k / k!
    for k in 1..MAX_ITER {
        fact_term *= if k == 1 { z } else { -z / k as f64 };
        let term = fact_term / k as f64;
        sum += term;
        if term.abs() < sum.abs() * f64::EPSILON {
            return sum;
        }
    }
    f64::NAN
}

/// `e^z E₁(z)` by the Lentz continued fraction, for `z ≥ 1`.
fn e1_scaled_cf(z: f64) -> f64 {
    let mut b = z + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=MAX_ITER {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).abs() < f64::EPSILON {
            return h;
        }
    }
    f64::NAN
}

/// Exponential integral `E₁(z) = ∫_z^∞ e^(−t)/t dt` for `z > 0`.
///
/// Series below 1, continued fraction above. `NaN` for `z ≤ 0`.
pub fn exp_integral_e1(z: f64) -> f64 {
    if z.is_nan() || z <= 0.0 {
        return f64::NAN;
    }
    if z.is_infinite() {
        return 0.0;
    }
    if z < 1.0 {
        -EULER_GAMMA - z.ln() + e1_series_tail(z)
    } else {
        e1_scaled_cf(z) * (-z).exp()
    }
}

/// `e^z E₁(z)`, finite for arbitrarily large `z` (behaves like `1/z`).
pub fn exp_scaled_e1(z: f64) -> f64 {
    if z.is_nan() || z <= 0.0 {
        return f64::NAN;
    }
    if z.is_infinite() {
        return 0.0;
    }
    if z < 1.0 {
        z.exp() * exp_integral_e1(z)
    } else {
        e1_scaled_cf(z)
    }
}
