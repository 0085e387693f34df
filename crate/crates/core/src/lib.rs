// NaN-propagating comparisons such as `!(x > 0.0)` are intended, and the
// quadrature and series constants are quoted to their published precision.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod distributions;
pub mod error;
pub mod fitting;
pub mod quadrature;
pub mod regression;
pub mod residual;
pub mod roots;
pub mod specfun;

pub use distributions::{DistTag, Distribution};
pub use error::{Error, Result};
pub use fitting::{
    censored_loglik, fit, fit_with, simulate, CensoredSample, Fit, FitOptions, FitResult,
};
pub use regression::{predict_residual_life, resolve_parameters, DataTable, SurvivalModel};
pub use residual::{
    mean_residual_life, median_residual_life, mrl_quadrature_oracle, percentile_residual_life,
    residual_life_table, ResidualLifeQuery, ResidualLifeTable, ResidualLifeType,
};
