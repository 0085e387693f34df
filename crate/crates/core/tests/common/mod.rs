#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use residual_life::{DistTag, Distribution};

pub const SURVIVAL_QUANTILES: [f64; 7] = [0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random parameter set for `tag` with a finite mean.
pub fn random_spec(tag: DistTag, rng: &mut impl Rng) -> Distribution {
    let mut u = |lo: f64, hi: f64| rng.random_range(lo..hi);
    match tag {
        DistTag::Exponential => Distribution::Exponential { rate: u(0.1, 5.0) },
        DistTag::Weibull => Distribution::Weibull {
            shape: u(0.4, 5.0),
            scale: u(0.2, 10.0),
        },
        DistTag::Gamma => Distribution::Gamma {
            shape: u(0.3, 8.0),
            rate: u(0.1, 4.0),
        },
        DistTag::Gompertz => Distribution::Gompertz {
            shape: u(0.02, 2.0),
            rate: u(0.02, 2.0),
        },
        DistTag::LogNormal => Distribution::LogNormal {
            meanlog: u(-1.0, 2.0),
            sdlog: u(0.15, 1.5),
        },
        DistTag::LogLogistic => Distribution::LogLogistic {
            shape: u(1.3, 7.0),
            scale: u(0.3, 6.0),
        },
        DistTag::GenGammaOrig => Distribution::GenGammaOrig {
            shape: u(0.4, 3.0),
            scale: u(0.3, 6.0),
            k: u(0.3, 5.0),
        },
        // heavy-tailed members keep a tail index of at least 1.3 so the
        // mean is comfortably finite
        DistTag::GenGamma => loop {
            let q: f64 = u(-1.5, 1.5);
            let sigma = u(0.25, 1.2);
            if q.abs() < 0.1 || (q < 0.0 && -q / sigma / (q * q) < 1.3) {
                continue;
            }
            break Distribution::GenGamma {
                mu: u(-0.5, 1.5),
                sigma,
                q,
            };
        },
        DistTag::GenFOrig => {
            let sigma = u(0.25, 1.2);
            Distribution::GenFOrig {
                mu: u(-0.5, 1.0),
                sigma,
                s1: u(0.4, 4.0),
                s2: sigma + u(0.4, 5.0),
            }
        }
        DistTag::GenF => loop {
            let d = Distribution::GenF {
                mu: u(-0.5, 1.0),
                sigma: u(0.25, 1.0),
                q: u(-1.0, 1.0),
                p: u(0.2, 2.0),
            };
            let Distribution::GenF { mu, sigma, q, p } = d else {
                unreachable!()
            };
            let o = residual_life::distributions::convert_genf_to_orig(mu, sigma, q, p).unwrap();
            if o.s2 / o.sigma >= 1.3 {
                break d;
            }
        },
    }
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// from Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule
}

/// Composite Gauss–Legendre over `panels` equal pieces of `[a, b]`.
pub fn composite_gl(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    panels: usize,
    rule: &[(f64, f64)],
) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let mid = a + (i as f64 + 0.5) * h;
            rule.iter()
                .map(|&(x, w)| w * f(mid + 0.5 * h * x))
                .sum::<f64>()
                * 0.5
                * h
        })
        .sum()
}

/// Tanh–sinh quadrature on `[0, 1]`; tolerant of endpoint singularities.
/// `f` receives `(t, 1 − t)` so the complement is not lost to rounding.
pub fn tanh_sinh(f: impl Fn(f64, f64) -> f64, h: f64) -> f64 {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut total = 0.0;
    let n = (4.0 / h).ceil() as i64;
    for k in -n..=n {
        let s = k as f64 * h;
        let u = half_pi * s.sinh();
        // t = (1 + tanh u)/2, 1 − t = 1/(1 + e^{2u})
        let one_minus = 1.0 / (1.0 + (2.0 * u).exp());
        let t = 1.0 / (1.0 + (-2.0 * u).exp());
        if t <= 0.0 || one_minus <= 0.0 {
            continue;
        }
        let w = half_pi * s.cosh() / (2.0 * u.cosh().powi(2));
        total += w * f(t, one_minus);
    }
    total * h
}
