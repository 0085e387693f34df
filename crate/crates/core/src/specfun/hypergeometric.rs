use super::MAX_ITER;

/// Power series `Σ (p)ₙ (q)ₙ / ((c)ₙ n!) wⁿ`, or `NaN` past the term cap.
fn series(p: f64, q: f64, c: f64, w: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..MAX_ITER {
        let n = n as f64;
        term *= (p + n) * (q + n) / ((c + n) * (n + 1.0)) * w;
        sum += term;
        if term == 0.0 || term.abs() < sum.abs() * 1e-16 {
            return sum;
        }
    }
    f64::NAN
}

/// Gauss hypergeometric function `₂F₁(a, b; c; z)` for `c > b > 0` and `z ≤ 0`.
///
/// Negative arguments are mapped into `[0, 1)` with one of the two Pfaff
/// transformations
///
/// ```text
/// ₂F₁(a, b; c; z) = (1 − z)^(−a) ₂F₁(a, c − b; c; z/(z − 1))
///                 = (1 − z)^(−b) ₂F₁(b, c − a; c; z/(z − 1))
/// ```
///
/// For `−1 ≤ z < 0` the image lies in `(0, 1/2]` and the variant whose series
/// has only nonnegative terms is used. For `z < −1` the image is in
/// `(1/2, 1)` and the variant that still converges at unit argument is chosen.
/// Series stop once a term drops below `1e-16` of the partial sum; more than
/// 10 000 terms yields `NaN`.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> f64 {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return f64::NAN;
    }
    if !(c > b && b > 0.0) || z > 0.0 {
        return f64::NAN;
    }
    if z == 0.0 {
        return 1.0;
    }
    let w = z / (z - 1.0);
    let ln_one_minus_z = (-z).ln_1p();
    let use_a_form = if z >= -1.0 { a >= 0.0 } else { a <= b };
    if use_a_form {
        (-a * ln_one_minus_z).exp() * series(a, c - b, c, w)
    } else {
        (-b * ln_one_minus_z).exp() * series(b, c - a, c, w)
    }
}
