//! Covariate models and per-observation residual-life prediction.
//!
//! A [`SurvivalModel`] puts a linear predictor `η = β₀ + Σ βⱼ xⱼ` on one
//! parameter of a baseline distribution (its location parameter, see
//! [`DistTag::location_param`]). Positive location parameters use a log
//! link, `rate = exp(η)` or `scale = exp(η)`; unrestricted ones (`mu`,
//! `meanlog`) use the identity. The other parameters are shared by every
//! observation.

mod data;
mod schema;

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use data::{Cell, Column, DataTable};
pub use schema::{
    build_design_matrix, build_design_row, Covariate, CovariateKind, CovariateSchema,
};

use crate::distributions::{DistTag, Distribution};
use crate::error::{Error, Result};
use crate::residual::{
    mean_residual_life, percentile_residual_life, ResidualLifeTable, ResidualLifeType,
};

/// Version written to, and required in, model files.
pub const MODEL_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Link {
    Log,
    Identity,
}

impl Link {
    /// The link used for `param` of `tag`.
    pub fn for_param(tag: DistTag, param: &str) -> Link {
        if tag.is_positive_param(param) {
            Link::Log
        } else {
            Link::Identity
        }
    }

    pub fn apply(self, value: f64) -> f64 {
        match self {
            Link::Log => value.ln(),
            Link::Identity => value,
        }
    }

    pub fn inverse(self, eta: f64) -> f64 {
        match self {
            Link::Log => eta.exp(),
            Link::Identity => eta,
        }
    }
}

/// A baseline distribution plus covariate effects on its location parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalModel {
    baseline: Distribution,
    link: Link,
    intercept: f64,
    coefficients: Vec<f64>,
    schema: CovariateSchema,
    training_data: Option<DataTable>,
}

impl SurvivalModel {
    /// Model with the given baseline (whose location parameter supplies the
    /// intercept) and one coefficient per design column of `schema`.
    pub fn new(
        baseline: Distribution,
        schema: CovariateSchema,
        coefficients: Vec<f64>,
    ) -> Result<Self> {
        baseline.validate()?;
        if coefficients.len() != schema.design_width() {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients supplied for {} design columns ({})",
                coefficients.len(),
                schema.design_width(),
                schema.design_columns().join(", ")
            )));
        }
        if let Some(b) = coefficients.iter().find(|b| !b.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "coefficient {b} is not finite"
            )));
        }
        let tag = baseline.tag();
        let loc = tag.location_param();
        let link = Link::for_param(tag, loc);
        let intercept = link.apply(baseline.param(loc).expect("location parameter exists"));
        Ok(Self {
            baseline,
            link,
            intercept,
            coefficients,
            schema,
            training_data: None,
        })
    }

    /// A model with no covariates.
    pub fn intercept_only(baseline: Distribution) -> Result<Self> {
        Self::new(baseline, CovariateSchema::default(), Vec::new())
    }

    /// Attach the covariate rows used for fitting; [`predict_residual_life`]
    /// falls back to them when no new data is given. Only the schema's
    /// columns are kept.
    pub fn with_training_data(mut self, data: &DataTable) -> Result<Self> {
        let kept = data.select(&self.schema.names())?;
        build_design_matrix(&self.schema, &kept)?;
        self.training_data = Some(kept);
        Ok(self)
    }

    pub fn dist(&self) -> DistTag {
        self.baseline.tag()
    }

    pub fn baseline(&self) -> &Distribution {
        &self.baseline
    }

    pub fn location_param(&self) -> &'static str {
        self.dist().location_param()
    }

    pub fn link(&self) -> Link {
        self.link
    }

    pub fn intercept(&self) -> f64 {
        self.intercept
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn schema(&self) -> &CovariateSchema {
        &self.schema
    }

    pub fn training_data(&self) -> Option<&DataTable> {
        self.training_data.as_ref()
    }

    /// Read a model file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ModelFile(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Write a model file.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json())
            .map_err(|e| Error::ModelFile(format!("cannot write {}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        let file = ModelFile::from(self);
        serde_json::to_string_pretty(&file).expect("model serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| Error::ModelFile(e.to_string()))?;
        file.try_into()
    }
}

/// The distribution for one design row: the location parameter becomes
/// `link⁻¹(β₀ + Σ βⱼ xⱼ)` and the rest come from the baseline.
///
/// The result is not validated; a location that leaves the parameter domain
/// yields a distribution whose methods return `NaN`.
pub fn resolve_parameters(model: &SurvivalModel, design_row: &[f64]) -> Result<Distribution> {
    if design_row.len() != model.coefficients.len() {
        return Err(Error::InvalidArgument(format!(
            "design row has {} entries, model expects {}",
            design_row.len(),
            model.coefficients.len()
        )));
    }
    let shift: f64 = model
        .coefficients
        .iter()
        .zip(design_row)
        .map(|(b, x)| b * x)
        .sum();
    if shift == 0.0 {
        // keep the baseline bit-for-bit rather than round-tripping the link
        return Ok(model.baseline);
    }
    let location = model.link.inverse(model.intercept + shift);
    Ok(model
        .baseline
        .with_param(model.location_param(), location)
        .expect("location parameter exists"))
}

/// Residual life at age `life` for each row of `newdata`.
///
/// Without `newdata` the model's stored training rows are used, and an
/// intercept-only model without stored rows yields a single row. Columns
/// the model does not use are ignored, and column order does not matter.
pub fn predict_residual_life(
    model: &SurvivalModel,
    life: f64,
    p: f64,
    kind: ResidualLifeType,
    newdata: Option<&DataTable>,
) -> Result<ResidualLifeTable> {
    if !(life.is_finite() && life >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "life must be a nonnegative number, got {life}"
        )));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "p must lie strictly between 0 and 1, got {p}"
        )));
    }
    let one_row = DataTable::empty(1);
    let data = match (newdata, &model.training_data) {
        (Some(d), _) => d,
        (None, Some(d)) => d,
        (None, None) if model.schema.is_empty() => &one_row,
        (None, None) => {
            return Err(Error::InvalidArgument(
                "the model stores no training rows; supply new data".into(),
            ))
        }
    };
    let design = build_design_matrix(&model.schema, data)?;
    let names = kind.columns();
    let mut columns: Vec<(String, Vec<f64>)> = names
        .iter()
        .map(|n| (n.to_string(), Vec::with_capacity(design.len())))
        .collect();
    for row in &design {
        let dist = resolve_parameters(model, row)?;
        for (name, col) in columns.iter_mut() {
            col.push(match name.as_str() {
                "mean" => mean_residual_life(&dist, life),
                "median" => percentile_residual_life(&dist, life, 0.5),
                _ => percentile_residual_life(&dist, life, p),
            });
        }
    }
    Ok(ResidualLifeTable {
        values: vec![life; design.len()],
        columns,
    })
}

#[derive(Serialize, Deserialize)]
struct Term {
    term: String,
    estimate: f64,
}

#[derive(Serialize, Deserialize)]
struct Coefficients {
    intercept: f64,
    terms: Vec<Term>,
}

/// On-disk layout of a model.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    schema_version: u32,
    dist: String,
    baseline: BTreeMap<String, f64>,
    location_param: String,
    link: Link,
    coefficients: Coefficients,
    covariates: CovariateSchema,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    training_data: Option<DataTable>,
}

impl From<&SurvivalModel> for ModelFile {
    fn from(m: &SurvivalModel) -> Self {
        ModelFile {
            schema_version: MODEL_SCHEMA_VERSION,
            dist: m.dist().name().to_string(),
            baseline: m
                .baseline
                .params()
                .into_iter()
                .map(|(n, v)| (n.to_string(), v))
                .collect(),
            location_param: m.location_param().to_string(),
            link: m.link,
            coefficients: Coefficients {
                intercept: m.intercept,
                terms: m
                    .schema
                    .design_columns()
                    .into_iter()
                    .zip(&m.coefficients)
                    .map(|(term, &estimate)| Term { term, estimate })
                    .collect(),
            },
            covariates: m.schema.clone(),
            training_data: m.training_data.clone(),
        }
    }
}

impl TryFrom<ModelFile> for SurvivalModel {
    type Error = Error;

    fn try_from(f: ModelFile) -> Result<Self> {
        if f.schema_version != MODEL_SCHEMA_VERSION {
            return Err(Error::ModelFile(format!(
                "unsupported schema_version {} (expected {MODEL_SCHEMA_VERSION})",
                f.schema_version
            )));
        }
        let baseline = Distribution::from_map(&f.dist, &f.baseline)?;
        let tag = baseline.tag();
        if f.location_param != tag.location_param()
            || f.link != Link::for_param(tag, tag.location_param())
        {
            return Err(Error::ModelFile(format!(
                "{} models put covariates on '{}' with a {:?} link",
                tag,
                tag.location_param(),
                Link::for_param(tag, tag.location_param())
            )));
        }
        let expected = f.covariates.design_columns();
        let got: Vec<&str> = f
            .coefficients
            .terms
            .iter()
            .map(|t| t.term.as_str())
            .collect();
        if got != expected {
            return Err(Error::ModelFile(format!(
                "coefficient terms [{}] do not match the covariates' design columns [{}]",
                got.join(", "),
                expected.join(", ")
            )));
        }
        let coefficients = f.coefficients.terms.iter().map(|t| t.estimate).collect();
        let mut model = SurvivalModel::new(baseline, f.covariates, coefficients)?;
        let drift = (model.intercept - f.coefficients.intercept).abs();
        if drift > 1e-9 * model.intercept.abs().max(1.0) {
            return Err(Error::ModelFile(format!(
                "intercept {} disagrees with the baseline {} = {}",
                f.coefficients.intercept,
                model.location_param(),
                model
                    .baseline
                    .param(model.location_param())
                    .unwrap_or(f64::NAN)
            )));
        }
        // the stored intercept is authoritative to the last bit
        model.intercept = f.coefficients.intercept;
        if let Some(d) = f.training_data {
            model = model.with_training_data(&d)?;
        }
        Ok(model)
    }
}
