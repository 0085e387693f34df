mod common;

use residual_life::fitting::{
    censored_loglik, fit, loglik_gradient, model_loglik, simulate, CensoredSample,
};
use residual_life::regression::{Column, DataTable};
use residual_life::{DistTag, Distribution};

fn truth(tag: DistTag) -> Distribution {
    let named: &[(&str, f64)] = match tag {
        DistTag::Exponential => &[("rate", 0.4)],
        DistTag::Weibull => &[("shape", 1.6), ("scale", 3.0)],
        DistTag::Gamma => &[("shape", 2.5), ("rate", 0.8)],
        DistTag::Gompertz => &[("shape", 0.3), ("rate", 0.1)],
        DistTag::LogNormal => &[("meanlog", 1.0), ("sdlog", 0.6)],
        DistTag::LogLogistic => &[("shape", 3.0), ("scale", 2.5)],
        DistTag::GenGammaOrig => &[("shape", 1.5), ("scale", 2.0), ("k", 2.0)],
        DistTag::GenGamma => &[("mu", 1.0), ("sigma", 0.5), ("Q", -0.5)],
        DistTag::GenFOrig => &[("mu", 1.0), ("sigma", 0.4), ("s1", 2.0), ("s2", 3.0)],
        DistTag::GenF => &[("mu", 1.0), ("sigma", 0.5), ("Q", 0.5), ("P", 1.0)],
    };
    Distribution::from_named(tag.name(), named).unwrap()
}

/// `ln f` from a central difference of the survival function, independent of
/// the closed-form densities.
fn ln_pdf_by_differencing(d: &Distribution, t: f64) -> f64 {
    let h = 1e-5 * t;
    ((d.survival(t - h) - d.survival(t + h)) / (2.0 * h)).ln()
}

#[test]
fn loglik_matches_a_differenced_survival_oracle() {
    for tag in DistTag::ALL {
        let d = truth(tag);
        let sample = simulate(&d, 200, 0.3, 11).unwrap();
        let oracle: f64 = sample
            .time()
            .iter()
            .zip(sample.event())
            .map(|(&t, &e)| {
                if e {
                    ln_pdf_by_differencing(&d, t)
                } else {
                    d.survival(t).ln()
                }
            })
            .sum();
        let got = censored_loglik(&d, &sample);
        assert!(
            ((got - oracle) / oracle).abs() < 1e-6,
            "{tag}: {got} vs oracle {oracle}"
        );
    }
}

#[test]
fn simulated_parameters_are_recovered() {
    for tag in DistTag::ALL {
        let d = truth(tag);
        let sample = simulate(&d, 3000, 0.2, 2024).unwrap();
        let fitted = fit(tag, &sample, &[]).unwrap();
        let r = &fitted.result;
        assert!(r.converged, "{tag} did not converge");
        // the maximum is at least as good as the truth
        assert!(r.loglik >= censored_loglik(&d, &sample) - 1e-8, "{tag}");
        for (name, value) in d.params() {
            let e = r.estimate(name).unwrap();
            let z = (e.estimate - value) / e.se;
            assert!(
                z.abs() < 4.5,
                "{tag} {name}: {} ± {} vs {value}",
                e.estimate,
                e.se
            );
            assert!(e.lower < e.estimate && e.estimate < e.upper);
        }
        let g = loglik_gradient(&fitted.model, &sample).unwrap();
        assert!(g.iter().all(|v| v.abs() <= 1e-3), "{tag} gradient {g:?}");
    }
}

#[test]
fn group_effect_is_recovered() {
    // two groups with Weibull scales 2 and 5: the log-scale effect is ln 2.5
    let mut time = Vec::new();
    let mut event = Vec::new();
    let mut group = Vec::new();
    for (label, scale, seed) in [("a", 2.0, 1), ("b", 5.0, 2)] {
        let d = Distribution::Weibull { shape: 1.4, scale };
        let s = simulate(&d, 1500, 0.25, seed).unwrap();
        time.extend_from_slice(s.time());
        event.extend(s.event().iter().map(|&e| if e { 1.0 } else { 0.0 }));
        group.extend(std::iter::repeat_n(label.to_string(), s.len()));
    }
    let table = DataTable::from_columns(vec![
        ("time".into(), Column::Numeric(time)),
        ("status".into(), Column::Numeric(event)),
        ("group".into(), Column::Text(group)),
    ])
    .unwrap();
    let sample = CensoredSample::from_table(&table, "time", "status").unwrap();
    let fitted = fit(DistTag::Weibull, &sample, &["group"]).unwrap();
    let beta = fitted.result.estimate("groupb").unwrap();
    assert!(
        ((beta.estimate - 2.5f64.ln()) / beta.se).abs() < 4.5,
        "{beta:?}"
    );
    let scale = fitted.result.estimate("scale").unwrap();
    assert!(((scale.estimate - 2.0) / scale.se).abs() < 4.5, "{scale:?}");
    let ll = model_loglik(&fitted.model, &sample).unwrap();
    assert!((ll - fitted.result.loglik).abs() < 1e-8);
}

#[test]
fn weibull_loglik_matches_direct_sum() {
    let (shape, scale) = (1.3f64, 2.2f64);
    let d = Distribution::Weibull { shape, scale };
    let sample = simulate(&d, 500, 0.25, 5).unwrap();
    let direct: f64 = sample
        .time()
        .iter()
        .zip(sample.event())
        .map(|(&t, &e)| {
            let z = (t / scale).powf(shape);
            let ln_h = shape.ln() - scale.ln() + (shape - 1.0) * (t / scale).ln();
            if e {
                ln_h - z
            } else {
                -z
            }
        })
        .sum();
    let got = censored_loglik(&d, &sample);
    assert!(((got - direct) / direct).abs() < 1e-10, "{got} vs {direct}");
}

#[test]
fn weibull_recovery_within_five_percent() {
    let d = Distribution::Weibull {
        shape: 1.5,
        scale: 4.0,
    };
    let sample = simulate(&d, 5000, 0.2, 42).unwrap();
    let a = fit(DistTag::Weibull, &sample, &[]).unwrap();
    let b = fit(DistTag::Weibull, &sample, &[]).unwrap();
    assert_eq!(a.result, b.result, "fitting is deterministic");
    let shape = a.result.estimate("shape").unwrap().estimate;
    let scale = a.result.estimate("scale").unwrap().estimate;
    assert!((shape / 1.5 - 1.0).abs() < 0.05, "{shape}");
    assert!((scale / 4.0 - 1.0).abs() < 0.05, "{scale}");
}
