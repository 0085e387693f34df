use thiserror::Error;

/// Errors raised while building models, validating input, or reading files.
///
/// Numeric kernels never return these: they report domain problems as `NaN`.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown distribution '{0}'; expected one of exponential, weibull, gamma, gompertz, lnorm, llogis, gengamma.orig, gengamma, genf.orig, genf")]
    UnknownDistribution(String),

    #[error("incorrect parameters entered. Parameters for {dist} are {expected}")]
    IncorrectParameters {
        dist: &'static str,
        expected: String,
    },

    #[error("parameter {name} of {dist} must be {requirement}, got {value}")]
    InvalidParameter {
        dist: &'static str,
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("Incorrect Level Entered: '{level}' is not a level of '{column}' (levels: {levels})")]
    IncorrectLevel {
        column: String,
        level: String,
        levels: String,
    },

    #[error("missing column '{0}' in the supplied data")]
    MissingColumn(String),

    #[error("column '{column}': {reason}")]
    InvalidColumn { column: String, reason: String },

    #[error("no observed events")]
    NoEvents,

    #[error("unsupported conversion: {0}")]
    UnsupportedConversion(String),

    #[error("data error: {0}")]
    Data(String),

    #[error("model file error: {0}")]
    ModelFile(String),
}

impl Error {
    /// Stable machine-readable code for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownDistribution(_) => "unknown_distribution",
            Error::IncorrectParameters { .. } => "incorrect_parameters",
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::IncorrectLevel { .. } => "incorrect_level",
            Error::MissingColumn(_) => "missing_column",
            Error::InvalidColumn { .. } => "invalid_column",
            Error::NoEvents => "no_events",
            Error::UnsupportedConversion(_) => "unsupported_conversion",
            Error::Data(_) => "data",
            Error::ModelFile(_) => "model_file",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
