//! Conversions between the Prentice and original parameterizations of the
//! generalized gamma and generalized F families.

use serde::{Deserialize, Serialize};

use super::Distribution;
use crate::error::{Error, Result};

/// Stacy's generalized gamma: shape `b`, scale `a`, and `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenGammaOrigParams {
    pub shape: f64,
    pub scale: f64,
    pub k: f64,
}

/// Prentice's generalized gamma: location `mu`, scale `sigma`, shape `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenGammaPrenticeParams {
    pub mu: f64,
    pub sigma: f64,
    pub q: f64,
}

/// Generalized F in its original form: `mu` (β), `sigma`, and the degrees of
/// freedom `s1` (m₁) and `s2` (m₂).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenFOrigParams {
    pub mu: f64,
    pub sigma: f64,
    pub s1: f64,
    pub s2: f64,
}

impl From<GenGammaOrigParams> for Distribution {
    fn from(p: GenGammaOrigParams) -> Self {
        Distribution::GenGammaOrig {
            shape: p.shape,
            scale: p.scale,
            k: p.k,
        }
    }
}

impl From<GenGammaPrenticeParams> for Distribution {
    fn from(p: GenGammaPrenticeParams) -> Self {
        Distribution::GenGamma {
            mu: p.mu,
            sigma: p.sigma,
            q: p.q,
        }
    }
}

impl From<GenFOrigParams> for Distribution {
    fn from(p: GenFOrigParams) -> Self {
        Distribution::GenFOrig {
            mu: p.mu,
            sigma: p.sigma,
            s1: p.s1,
            s2: p.s2,
        }
    }
}

fn positive(dist: &'static str, name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            dist,
            name,
            requirement: "positive and finite",
            value,
        })
    }
}

/// Prentice `(mu, sigma, Q)` to Stacy `(shape, scale, k)`; defined for `Q > 0`.
///
/// `shape = Q/σ`, `scale = exp(μ − ln(Q⁻²)·σ/Q)`, `k = Q⁻²`.
pub fn convert_gengamma_to_orig(mu: f64, sigma: f64, q: f64) -> Result<GenGammaOrigParams> {
    positive("gengamma", "sigma", sigma)?;
    if !mu.is_finite() {
        return Err(Error::InvalidParameter {
            dist: "gengamma",
            name: "mu",
            requirement: "finite",
            value: mu,
        });
    }
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::UnsupportedConversion(format!(
            "gengamma with Q = {q} has no gengamma.orig equivalent; Q must be positive"
        )));
    }
    Ok(gengamma_to_orig_unchecked(mu, sigma, q))
}

pub(crate) fn gengamma_to_orig_unchecked(mu: f64, sigma: f64, q: f64) -> GenGammaOrigParams {
    let k = 1.0 / (q * q);
    GenGammaOrigParams {
        shape: q.abs() / sigma,
        scale: (mu - k.ln() * sigma / q.abs()).exp(),
        k,
    }
}

/// Stacy `(shape b, scale a, k)` to Prentice: `μ = ln a + ln k / b`,
/// `σ = 1/(b√k)`, `Q = 1/√k`.
pub fn convert_gengamma_orig_to_prentice(
    shape: f64,
    scale: f64,
    k: f64,
) -> Result<GenGammaPrenticeParams> {
    positive("gengamma.orig", "shape", shape)?;
    positive("gengamma.orig", "scale", scale)?;
    positive("gengamma.orig", "k", k)?;
    let root_k = k.sqrt();
    Ok(GenGammaPrenticeParams {
        mu: scale.ln() + k.ln() / shape,
        sigma: 1.0 / (shape * root_k),
        q: 1.0 / root_k,
    })
}

/// Prentice generalized F `(mu, sigma, Q, P)` to the original form.
///
/// With `δ = √(Q² + 2P)`: `m₁ = 2/(Q² + 2P + Qδ)`, `m₂ = 2/(Q² + 2P − Qδ)`,
/// `σ_orig = σ/δ`, `β = μ`.
pub fn convert_genf_to_orig(mu: f64, sigma: f64, q: f64, p: f64) -> Result<GenFOrigParams> {
    positive("genf", "sigma", sigma)?;
    positive("genf", "P", p)?;
    for (name, value) in [("mu", mu), ("Q", q)] {
        if !value.is_finite() {
            return Err(Error::InvalidParameter {
                dist: "genf",
                name,
                requirement: "finite",
                value,
            });
        }
    }
    Ok(genf_to_orig_unchecked(mu, sigma, q, p))
}

pub(crate) fn genf_to_orig_unchecked(mu: f64, sigma: f64, q: f64, p: f64) -> GenFOrigParams {
    let delta = (q * q + 2.0 * p).sqrt();
    // (Q² + 2P ± Qδ) = δ(δ ± Q); of the two products 2/(δ(δ ± Q)) and
    // (δ ∓ Q)/(Pδ) pick the one that does not cancel.
    let big = delta + q.abs();
    let (small_df, large_df) = (2.0 / (delta * big), big / (p * delta));
    let (s1, s2) = if q == 0.0 {
        (1.0 / p, 1.0 / p)
    } else if q > 0.0 {
        (small_df, large_df)
    } else {
        (large_df, small_df)
    };
    GenFOrigParams {
        mu,
        sigma: sigma / delta,
        s1,
        s2,
    }
}
