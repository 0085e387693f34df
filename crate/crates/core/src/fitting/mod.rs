//! Maximum-likelihood fitting to right-censored data.
//!
//! Parameters are optimized on an unconstrained scale (log for positive
//! parameters, identity otherwise) with a restarted Nelder–Mead search,
//! finished by a few Newton steps on a finite-difference Hessian. Standard
//! errors come from the inverse of that Hessian, mapped back to the natural
//! scale with the delta method.

mod nelder_mead;
mod simulate;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

pub use nelder_mead::{nelder_mead, Minimum, NelderMeadOptions};
pub use simulate::{calibrate_censoring_rate, simulate};

use crate::distributions::{DistTag, Distribution};
use crate::error::{Error, Result};
use crate::regression::{build_design_matrix, Column, CovariateSchema, DataTable, SurvivalModel};

const Z_95: f64 = 1.959_963_984_540_054;

/// Survival times with right-censoring indicators and optional covariates.
#[derive(Debug, Clone, PartialEq)]
pub struct CensoredSample {
    time: Vec<f64>,
    event: Vec<bool>,
    covariates: Option<DataTable>,
}

impl CensoredSample {
    /// `event[i]` is `true` for an observed failure and `false` when
    /// `time[i]` is a censoring time.
    pub fn new(time: Vec<f64>, event: Vec<bool>) -> Result<Self> {
        if time.len() != event.len() {
            return Err(Error::Data(format!(
                "{} times but {} event indicators",
                time.len(),
                event.len()
            )));
        }
        if let Some(t) = time.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
            return Err(Error::Data(format!(
                "survival times must be positive, got {t}"
            )));
        }
        if !event.iter().any(|&e| e) {
            return Err(Error::NoEvents);
        }
        Ok(Self {
            time,
            event,
            covariates: None,
        })
    }

    /// Read the time and event columns of `table`; the whole table is kept
    /// as the covariate source. The event column must hold only 0 and 1.
    pub fn from_table(table: &DataTable, time_col: &str, event_col: &str) -> Result<Self> {
        let time = table.numeric(time_col)?.to_vec();
        let raw = match table.column(event_col) {
            Some(Column::Numeric(v)) => v,
            Some(Column::Text(_)) => {
                return Err(Error::InvalidColumn {
                    column: event_col.to_string(),
                    reason: "event indicator must be 0 or 1".into(),
                })
            }
            None => return Err(Error::MissingColumn(event_col.to_string())),
        };
        let event = raw
            .iter()
            .map(|&e| match e {
                0.0 => Ok(false),
                1.0 => Ok(true),
                other => Err(Error::InvalidColumn {
                    column: event_col.to_string(),
                    reason: format!("event indicator must be 0 or 1, found {other}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(time, event)?.with_covariates(table.clone())
    }

    pub fn with_covariates(mut self, table: DataTable) -> Result<Self> {
        if table.nrows() != self.time.len() {
            return Err(Error::Data(format!(
                "covariate table has {} rows for {} observations",
                table.nrows(),
                self.time.len()
            )));
        }
        self.covariates = Some(table);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.time.len()
    }

    pub fn is_empty(&self) -> bool {
        self.time.is_empty()
    }

    pub fn time(&self) -> &[f64] {
        &self.time
    }

    pub fn event(&self) -> &[bool] {
        &self.event
    }

    pub fn covariates(&self) -> Option<&DataTable> {
        self.covariates.as_ref()
    }

    pub fn events(&self) -> usize {
        self.event.iter().filter(|&&e| e).count()
    }
}

/// `Σ [δᵢ ln f(tᵢ) + (1 − δᵢ) ln S(tᵢ)]` for a single distribution; covariates
/// are ignored.
pub fn censored_loglik(dist: &Distribution, sample: &CensoredSample) -> f64 {
    sample
        .time
        .iter()
        .zip(&sample.event)
        .map(|(&t, &e)| {
            if e {
                dist.ln_pdf(t)
            } else {
                dist.ln_survival(t)
            }
        })
        .sum()
}

/// Log-likelihood of a covariate model, resolving parameters row by row.
pub fn model_loglik(model: &SurvivalModel, sample: &CensoredSample) -> Result<f64> {
    let design = design_for(model.schema(), sample)?;
    let mut total = 0.0;
    for (i, row) in design.iter().enumerate() {
        let d = crate::regression::resolve_parameters(model, row)?;
        total += if sample.event[i] {
            d.ln_pdf(sample.time[i])
        } else {
            d.ln_survival(sample.time[i])
        };
    }
    Ok(total)
}

fn design_for(schema: &CovariateSchema, sample: &CensoredSample) -> Result<Vec<Vec<f64>>> {
    if schema.is_empty() {
        return Ok(vec![Vec::new(); sample.len()]);
    }
    let data = sample
        .covariates
        .as_ref()
        .ok_or_else(|| Error::MissingColumn(schema.names()[0].to_string()))?;
    build_design_matrix(schema, data)
}

/// Search settings for [`fit_with`].
#[derive(Debug, Clone)]
pub struct FitOptions {
    /// Numeric covariates to treat as categorical.
    pub factors: Vec<String>,
    pub simplex: NelderMeadOptions,
    /// Extra Nelder–Mead runs from the current optimum.
    pub restarts: usize,
    /// Starting baseline; defaults to moment-based values.
    pub start: Option<Distribution>,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            factors: Vec::new(),
            simplex: NelderMeadOptions::default(),
            restarts: 3,
            start: None,
        }
    }
}

/// One row of a fit summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterEstimate {
    pub name: String,
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
    pub se: f64,
}

/// Estimates, uncertainty and convergence diagnostics of a fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub dist: String,
    pub n: usize,
    pub events: usize,
    /// Baseline parameters on their natural scale; with covariates, the
    /// location parameter is its value at the reference covariate values.
    pub estimates: Vec<ParameterEstimate>,
    /// Covariate effects on the location parameter's link scale.
    pub coefficients: Vec<ParameterEstimate>,
    pub loglik: f64,
    pub converged: bool,
    pub iterations: usize,
}

impl FitResult {
    pub fn estimate(&self, name: &str) -> Option<&ParameterEstimate> {
        self.estimates
            .iter()
            .chain(&self.coefficients)
            .find(|e| e.name == name)
    }
}

/// A fit summary together with the fitted model.
#[derive(Debug, Clone)]
pub struct Fit {
    pub result: FitResult,
    pub model: SurvivalModel,
}

/// Fit `tag` to `sample` with covariates `covariates` on the location
/// parameter, using default search settings.
pub fn fit(tag: DistTag, sample: &CensoredSample, covariates: &[&str]) -> Result<Fit> {
    fit_with(tag, sample, covariates, &FitOptions::default())
}

struct Problem<'a> {
    tag: DistTag,
    positive: Vec<bool>,
    loc: usize,
    design: Vec<Vec<f64>>,
    sample: &'a CensoredSample,
}

impl Problem<'_> {
    fn n_base(&self) -> usize {
        self.positive.len()
    }

    fn natural(&self, theta: &[f64]) -> Vec<f64> {
        theta[..self.n_base()]
            .iter()
            .zip(&self.positive)
            .map(|(&v, &pos)| if pos { v.exp() } else { v })
            .collect()
    }

    fn loglik(&self, theta: &[f64]) -> f64 {
        let mut values = self.natural(theta);
        let betas = &theta[self.n_base()..];
        let intercept = theta[self.loc];
        let pos_loc = self.positive[self.loc];
        let mut total = 0.0;
        for (i, row) in self.design.iter().enumerate() {
            if !betas.is_empty() {
                let eta = intercept + betas.iter().zip(row).map(|(b, x)| b * x).sum::<f64>();
                values[self.loc] = if pos_loc { eta.exp() } else { eta };
            }
            let d = Distribution::from_values_unchecked(self.tag, &values);
            let t = self.sample.time[i];
            total += if self.sample.event[i] {
                d.ln_pdf(t)
            } else {
                d.ln_survival(t)
            };
        }
        total
    }

    fn objective(&self, theta: &[f64]) -> f64 {
        let ll = self.loglik(theta);
        if ll.is_nan() {
            f64::INFINITY
        } else {
            -ll
        }
    }
}

fn starting_values(tag: DistTag, sample: &CensoredSample) -> Vec<f64> {
    let observed: Vec<f64> = sample
        .time
        .iter()
        .zip(&sample.event)
        .filter(|(_, &e)| e)
        .map(|(&t, _)| t)
        .collect();
    let m = observed.iter().sum::<f64>() / observed.len() as f64;
    let mean_log = observed.iter().map(|t| t.ln()).sum::<f64>() / observed.len() as f64;
    match tag {
        DistTag::Exponential => vec![1.0 / m],
        DistTag::Weibull | DistTag::LogLogistic => vec![1.0, m],
        DistTag::Gamma => vec![1.0, 1.0 / m],
        DistTag::Gompertz => vec![1.0 / m, 1.0 / m],
        DistTag::LogNormal => vec![mean_log, 1.0],
        DistTag::GenGammaOrig => vec![1.0, m, 1.0],
        DistTag::GenGamma => vec![m.ln(), 1.0, 0.5],
        DistTag::GenFOrig => vec![m.ln(), 1.0, 1.0, 1.0],
        DistTag::GenF => vec![m.ln(), 1.0, 0.5, 1.0],
    }
}

/// Central-difference gradient and Hessian of `f` at `x`, with steps
/// `h = 1e-4 (1 + |x|)`.
fn finite_differences<F: Fn(&[f64]) -> f64>(f: F, x: &[f64]) -> (DVector<f64>, DMatrix<f64>) {
    let n = x.len();
    let h: Vec<f64> = x.iter().map(|v| 1e-4 * (1.0 + v.abs())).collect();
    let at = |moves: &[(usize, f64)]| {
        let mut y = x.to_vec();
        for &(i, d) in moves {
            y[i] += d;
        }
        f(&y)
    };
    let f0 = f(x);
    let mut grad = DVector::zeros(n);
    let mut hess = DMatrix::zeros(n, n);
    for i in 0..n {
        let fp = at(&[(i, h[i])]);
        let fm = at(&[(i, -h[i])]);
        grad[i] = (fp - fm) / (2.0 * h[i]);
        hess[(i, i)] = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
        for j in 0..i {
            let v = (at(&[(i, h[i]), (j, h[j])])
                - at(&[(i, h[i]), (j, -h[j])])
                - at(&[(i, -h[i]), (j, h[j])])
                + at(&[(i, -h[i]), (j, -h[j])]))
                / (4.0 * h[i] * h[j]);
            hess[(i, j)] = v;
            hess[(j, i)] = v;
        }
    }
    (grad, hess)
}

/// Fit with explicit search settings.
pub fn fit_with(
    tag: DistTag,
    sample: &CensoredSample,
    covariates: &[&str],
    opts: &FitOptions,
) -> Result<Fit> {
    let schema = match (covariates.is_empty(), sample.covariates.as_ref()) {
        (true, _) => CovariateSchema::default(),
        (false, Some(data)) => {
            let factors: Vec<&str> = opts.factors.iter().map(String::as_str).collect();
            CovariateSchema::infer(data, covariates, &factors)?
        }
        (false, None) => return Err(Error::MissingColumn(covariates[0].to_string())),
    };
    let design = design_for(&schema, sample)?;
    let names = tag.param_names();
    let problem = Problem {
        tag,
        positive: names.iter().map(|n| tag.is_positive_param(n)).collect(),
        loc: names
            .iter()
            .position(|n| *n == tag.location_param())
            .expect("location parameter is a parameter"),
        design,
        sample,
    };

    let start = match opts.start {
        Some(d) if d.tag() == tag => d.values(),
        Some(d) => {
            return Err(Error::InvalidArgument(format!(
                "starting values are for {}, not {tag}",
                d.tag()
            )))
        }
        None => starting_values(tag, sample),
    };
    let mut theta: Vec<f64> = start
        .iter()
        .zip(&problem.positive)
        .map(|(&v, &pos)| if pos { v.ln() } else { v })
        .collect();
    theta.extend(std::iter::repeat_n(0.0, schema.design_width()));

    let objective = |t: &[f64]| problem.objective(t);
    let steps = |t: &[f64]| -> Vec<f64> { t.iter().map(|v| 0.1 * v.abs().max(0.1)).collect() };
    let mut best = nelder_mead(objective, &theta, &steps(&theta), opts.simplex);
    let mut iterations = best.iterations;
    for _ in 0..opts.restarts {
        let again = nelder_mead(objective, &best.x, &steps(&best.x), opts.simplex);
        iterations += again.iterations;
        let improved = again.f < best.f - opts.simplex.ftol * best.f.abs();
        if again.f <= best.f {
            best = again;
        }
        if !improved {
            break;
        }
    }
    let mut converged = best.converged && best.f.is_finite();

    // Newton polish on the finite-difference Hessian. Close to the optimum
    // the expected gain is below the rounding noise of the log-likelihood,
    // so full steps are taken there without a descent test.
    let mut x = best.x.clone();
    let mut fx = best.f;
    for _ in 0..10 {
        let (g, h) = finite_differences(objective, &x);
        let Some(chol) = h.cholesky() else {
            break;
        };
        let step = chol.solve(&g);
        let decrement = g.dot(&step);
        if !(decrement > 1e-20) {
            break;
        }
        let mut t = 1.0;
        let mut moved = false;
        for _ in 0..20 {
            let cand: Vec<f64> = x.iter().zip(step.iter()).map(|(a, s)| a - t * s).collect();
            let fc = objective(&cand);
            if fc <= fx || (decrement < 1e-4 && fc.is_finite()) {
                x = cand;
                fx = fc;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if !moved {
            break;
        }
    }

    let (grad, hess) = finite_differences(objective, &x);
    let covariance = hess.clone().cholesky().map(|c| c.inverse());
    // the Newton decrement bounds the log-likelihood still to be gained
    match &covariance {
        Some(c) if grad.dot(&(c * &grad)) < 1e-6 => {}
        _ => converged = false,
    }
    let se_theta: Vec<f64> = (0..x.len())
        .map(|i| match &covariance {
            Some(c) if c[(i, i)] >= 0.0 => c[(i, i)].sqrt(),
            _ => f64::NAN,
        })
        .collect();

    let natural = problem.natural(&x);
    let estimates = names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let (est, s) = (natural[i], se_theta[i]);
            if problem.positive[i] {
                ParameterEstimate {
                    name: name.to_string(),
                    estimate: est,
                    lower: est * (-Z_95 * s).exp(),
                    upper: est * (Z_95 * s).exp(),
                    se: est * s,
                }
            } else {
                ParameterEstimate {
                    name: name.to_string(),
                    estimate: est,
                    lower: est - Z_95 * s,
                    upper: est + Z_95 * s,
                    se: s,
                }
            }
        })
        .collect();
    let nb = problem.n_base();
    let coefficients = schema
        .design_columns()
        .into_iter()
        .enumerate()
        .map(|(j, name)| {
            let (est, s) = (x[nb + j], se_theta[nb + j]);
            ParameterEstimate {
                name,
                estimate: est,
                lower: est - Z_95 * s,
                upper: est + Z_95 * s,
                se: s,
            }
        })
        .collect();

    let baseline = Distribution::from_values(tag, &natural)?;
    let mut model = SurvivalModel::new(baseline, schema, x[nb..].to_vec())?;
    if let (false, Some(data)) = (model.schema().is_empty(), sample.covariates.as_ref()) {
        model = model.with_training_data(data)?;
    }
    let result = FitResult {
        dist: tag.name().to_string(),
        n: sample.len(),
        events: sample.events(),
        estimates,
        coefficients,
        loglik: -fx,
        converged,
        iterations,
    };
    Ok(Fit { result, model })
}

/// Central-difference gradient of the log-likelihood on the optimizer's
/// unconstrained scale, at `model`'s parameters.
pub fn loglik_gradient(model: &SurvivalModel, sample: &CensoredSample) -> Result<Vec<f64>> {
    let tag = model.dist();
    let names = tag.param_names();
    let positive: Vec<bool> = names.iter().map(|n| tag.is_positive_param(n)).collect();
    let problem = Problem {
        tag,
        loc: names
            .iter()
            .position(|n| *n == tag.location_param())
            .expect("location parameter is a parameter"),
        design: design_for(model.schema(), sample)?,
        positive,
        sample,
    };
    let mut theta: Vec<f64> = model
        .baseline()
        .values()
        .iter()
        .zip(&problem.positive)
        .map(|(&v, &pos)| if pos { v.ln() } else { v })
        .collect();
    theta[problem.loc] = model.intercept();
    theta.extend_from_slice(model.coefficients());
    let (g, _) = finite_differences(|t| problem.loglik(t), &theta);
    Ok(g.iter().copied().collect())
}
