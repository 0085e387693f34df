use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::data::{Cell, Column, DataTable};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CovariateKind {
    Numeric,
    /// Treatment contrasts: the first level is the reference.
    Categorical {
        levels: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Covariate {
    pub name: String,
    #[serde(flatten)]
    pub kind: CovariateKind,
}

impl Covariate {
    pub fn numeric(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            kind: CovariateKind::Numeric,
        }
    }

    pub fn categorical<S: Into<String>>(
        name: impl Into<String>,
        levels: impl IntoIterator<Item = S>,
    ) -> Self {
        Self {
            name: name.into(),
            kind: CovariateKind::Categorical {
                levels: levels.into_iter().map(Into::into).collect(),
            },
        }
    }
}

/// The covariates of a model and how each is encoded.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Covariate>", into = "Vec<Covariate>")]
pub struct CovariateSchema {
    covariates: Vec<Covariate>,
}

impl TryFrom<Vec<Covariate>> for CovariateSchema {
    type Error = Error;

    fn try_from(covariates: Vec<Covariate>) -> Result<Self> {
        Self::new(covariates)
    }
}

impl From<CovariateSchema> for Vec<Covariate> {
    fn from(s: CovariateSchema) -> Self {
        s.covariates
    }
}

impl CovariateSchema {
    pub fn new(covariates: Vec<Covariate>) -> Result<Self> {
        let mut seen = HashSet::new();
        for c in &covariates {
            if !seen.insert(c.name.as_str()) {
                return Err(Error::InvalidArgument(format!(
                    "covariate '{}' listed twice",
                    c.name
                )));
            }
            if let CovariateKind::Categorical { levels } = &c.kind {
                if levels.is_empty() {
                    return Err(Error::InvalidArgument(format!(
                        "categorical covariate '{}' has no levels",
                        c.name
                    )));
                }
                if levels.iter().collect::<HashSet<_>>().len() != levels.len() {
                    return Err(Error::InvalidArgument(format!(
                        "categorical covariate '{}' repeats a level",
                        c.name
                    )));
                }
            }
        }
        Ok(Self { covariates })
    }

    /// Schema for the named columns of `data`. Text columns, and numeric
    /// columns listed in `factors`, become categorical with their distinct
    /// values as levels: text sorted lexically, numbers sorted numerically.
    pub fn infer(data: &DataTable, names: &[&str], factors: &[&str]) -> Result<Self> {
        let mut covariates = Vec::with_capacity(names.len());
        for &name in names {
            let col = data
                .column(name)
                .ok_or_else(|| Error::MissingColumn(name.to_string()))?;
            let cov = match col {
                Column::Text(v) => {
                    let levels: BTreeSet<&String> = v.iter().collect();
                    Covariate::categorical(name, levels.into_iter().cloned())
                }
                Column::Numeric(v) if factors.contains(&name) => {
                    let mut sorted = v.clone();
                    sorted.sort_by(f64::total_cmp);
                    sorted.dedup();
                    Covariate::categorical(name, sorted.iter().map(f64::to_string))
                }
                Column::Numeric(_) => Covariate::numeric(name),
            };
            covariates.push(cov);
        }
        Self::new(covariates)
    }

    pub fn covariates(&self) -> &[Covariate] {
        &self.covariates
    }

    pub fn is_empty(&self) -> bool {
        self.covariates.is_empty()
    }

    /// Covariate names in schema order.
    pub fn names(&self) -> Vec<&str> {
        self.covariates.iter().map(|c| c.name.as_str()).collect()
    }

    /// Names of the design-matrix columns: a numeric covariate keeps its
    /// name; a categorical one contributes `name` + level for each
    /// non-reference level.
    pub fn design_columns(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in &self.covariates {
            match &c.kind {
                CovariateKind::Numeric => out.push(c.name.clone()),
                CovariateKind::Categorical { levels } => {
                    out.extend(levels[1..].iter().map(|l| format!("{}{l}", c.name)))
                }
            }
        }
        out
    }

    pub fn design_width(&self) -> usize {
        self.covariates
            .iter()
            .map(|c| match &c.kind {
                CovariateKind::Numeric => 1,
                CovariateKind::Categorical { levels } => levels.len() - 1,
            })
            .sum()
    }
}

/// Encode row `row` of `data` as a design-matrix row (without intercept).
///
/// Columns are looked up by name, so their order in `data` and any columns
/// the schema does not mention are irrelevant.
pub fn build_design_row(
    schema: &CovariateSchema,
    data: &DataTable,
    row: usize,
) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(schema.design_width());
    for c in &schema.covariates {
        let cell = data
            .cell(&c.name, row)
            .ok_or_else(|| Error::MissingColumn(c.name.clone()))?;
        match &c.kind {
            CovariateKind::Numeric => match cell {
                Cell::Number(x) => out.push(x),
                Cell::Text(s) => {
                    return Err(Error::InvalidColumn {
                        column: c.name.clone(),
                        reason: format!("expected a number, found '{s}'"),
                    })
                }
            },
            CovariateKind::Categorical { levels } => {
                let label = cell.label();
                let idx = levels.iter().position(|l| *l == label).ok_or_else(|| {
                    Error::IncorrectLevel {
                        column: c.name.clone(),
                        level: label.clone(),
                        levels: levels.join(", "),
                    }
                })?;
                out.extend((1..levels.len()).map(|j| if j == idx { 1.0 } else { 0.0 }));
            }
        }
    }
    Ok(out)
}

/// Design rows for every row of `data`.
pub fn build_design_matrix(schema: &CovariateSchema, data: &DataTable) -> Result<Vec<Vec<f64>>> {
    (0..data.nrows())
        .map(|i| build_design_row(schema, data, i))
        .collect()
}
