use super::{MAX_ITER, TINY};

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;
const LN_SQRT_PI: f64 = 0.572_364_942_924_700_1;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Switch from `1 − erf` to the continued fraction.
const CF_THRESHOLD: f64 = 2.0;

/// `erf(x) = 2/√π e^(−x²) Σ 2ⁿ x^(2n+1) / (1·3·…·(2n+1))`; all terms positive.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    for n in 1..MAX_ITER {
        term *= 2.0 * x2 / (2 * n + 1) as f64;
        sum += term;
        if term < sum * f64::EPSILON {
            break;
        }
    }
    2.0 * FRAC_1_SQRT_PI * (-x2).exp() * sum
}

/// `ln(erfc(x) e^(x²) √π / x)` for `x ≥ 2`, from the even continued fraction
/// `1 / (x² + 1/2 − (1·2/4)/(x² + 5/2 − (3·4/4)/(x² + 9/2 − …)))`.
fn ln_erfc_cf_factor(x: f64) -> f64 {
    let x2 = x * x;
    let mut f = x2 + 0.5;
    let mut c = f;
    let mut d = 0.0;
    for n in 1..=MAX_ITER {
        let n = n as f64;
        let an = -n * (2.0 * n - 1.0) / 2.0;
        let bn = x2 + 0.5 + 2.0 * n;
        d = bn + an * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = bn + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < f64::EPSILON {
            return -f.ln();
        }
    }
    f64::NAN
}

/// ln erfc(x) for `x ≥ 2`.
fn ln_erfc_large(x: f64) -> f64 {
    -x * x + x.ln() - LN_SQRT_PI + ln_erfc_cf_factor(x)
}

/// Error function.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return -erf(-x);
    }
    if x < CF_THRESHOLD {
        erf_series(x)
    } else {
        1.0 - erfc(x)
    }
}

/// Complementary error function, relative-accurate in the upper tail.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x < CF_THRESHOLD {
        1.0 - erf_series(x)
    } else if x.is_infinite() {
        0.0
    } else {
        ln_erfc_large(x).exp()
    }
}

/// ln Φ̄(z) = ln P(Z > z) for a standard normal Z.
pub fn ln_std_normal_sf(z: f64) -> f64 {
    if z.is_nan() {
        return f64::NAN;
    }
    if z == f64::INFINITY {
        return f64::NEG_INFINITY;
    }
    let x = z * std::f64::consts::FRAC_1_SQRT_2;
    if x >= CF_THRESHOLD {
        ln_erfc_large(x) - std::f64::consts::LN_2
    } else if x > -CF_THRESHOLD {
        (0.5 * erfc(x)).ln()
    } else {
        (-0.5 * erfc(-x)).ln_1p()
    }
}

/// ln Φ(z).
pub fn ln_std_normal_cdf(z: f64) -> f64 {
    ln_std_normal_sf(-z)
}

/// Standard normal cdf Φ(z), via the complementary error function.
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z * std::f64::consts::FRAC_1_SQRT_2)
}

/// Standard normal survival function 1 − Φ(z).
pub fn std_normal_sf(z: f64) -> f64 {
    0.5 * erfc(z * std::f64::consts::FRAC_1_SQRT_2)
}

fn ln_std_normal_pdf(z: f64) -> f64 {
    -0.5 * z * z - LN_SQRT_2PI
}

/// Rational initial guess for Φ⁻¹(p), `0 < p ≤ 0.5` (relative error ~1e-9).
fn quantile_guess(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    if p < 0.02425 {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    }
}

/// Φ⁻¹(p) for `0 < p ≤ 0.5`, refined with Halley steps in log space.
fn lower_quantile(p: f64) -> f64 {
    let ln_p = p.ln();
    let mut z = quantile_guess(p);
    for _ in 0..4 {
        let ln_pdf = ln_std_normal_pdf(z);
        // (Φ(z) − p) / φ(z)
        let u = (ln_std_normal_cdf(z) - ln_pdf).exp() - (ln_p - ln_pdf).exp();
        let step = u / (1.0 + 0.5 * z * u);
        z -= step;
        if step.abs() <= 1e-16 * z.abs().max(1.0) {
            break;
        }
    }
    z
}

/// Standard normal quantile Φ⁻¹(p); `−∞` at 0, `+∞` at 1, `NaN` outside `[0, 1]`.
pub fn std_normal_quantile(p: f64) -> f64 {
    if p.is_nan() || !(0.0..=1.0).contains(&p) {
        return f64::NAN;
    }
    if p == 0.0 {
        return f64::NEG_INFINITY;
    }
    if p == 1.0 {
        return f64::INFINITY;
    }
    if p <= 0.5 {
        lower_quantile(p)
    } else {
        -lower_quantile(1.0 - p)
    }
}
