//! Seeded draws of right-censored samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CensoredSample;
use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_to_infinity, Tolerance};
use crate::roots::brent;

/// Rate `c` of exponential censoring times that censors a `fraction` of
/// draws from `dist`, i.e. the root of `c ∫₀^∞ S(t) e^{−ct} dt = fraction`.
pub fn calibrate_censoring_rate(dist: &Distribution, fraction: f64) -> Result<f64> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "censoring fraction must lie in (0, 1), got {fraction}"
        )));
    }
    dist.validate()?;
    let median = dist.quantile(0.5);
    let censored = |ln_c: f64| {
        let c = ln_c.exp();
        // the censoring time's own scale 1/c keeps the mapping well conditioned
        let q = integrate_to_infinity(
            |t| (dist.ln_survival(t) - c * t).exp(),
            0.0,
            median.min(1.0 / c),
            Tolerance::new(1e-14, 1e-10),
        );
        c * q.value - fraction
    };
    let center = -median.ln();
    brent(censored, center - 40.0, center + 40.0, 1e-12)
        .map(f64::exp)
        .ok_or_else(|| Error::InvalidArgument(format!("cannot calibrate censoring for {dist}")))
}

/// Draw `n` survival times from `dist`, independently censored by
/// exponential times calibrated to censor about `censor_fraction` of them.
/// The same seed always gives the same sample.
pub fn simulate(
    dist: &Distribution,
    n: usize,
    censor_fraction: f64,
    seed: u64,
) -> Result<CensoredSample> {
    dist.validate()?;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "sample size must be positive".into(),
        ));
    }
    let rate = if censor_fraction == 0.0 {
        0.0
    } else {
        calibrate_censoring_rate(dist, censor_fraction)?
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut time = Vec::with_capacity(n);
    let mut event = Vec::with_capacity(n);
    for _ in 0..n {
        let u: f64 = rng.random();
        let t = dist.inverse_ln_survival((-u).ln_1p());
        let c = if rate > 0.0 {
            -(1.0 - rng.random::<f64>()).ln() / rate
        } else {
            f64::INFINITY
        };
        // a defective survival curve can put mass at infinity
        let (obs, ev) = if t <= c { (t, true) } else { (c, false) };
        time.push(obs.max(f64::MIN_POSITIVE));
        event.push(ev && obs.is_finite());
    }
    if time.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "{dist} produced survival times beyond the floating-point range; use censoring"
        )));
    }
    CensoredSample::new(time, event)
}
