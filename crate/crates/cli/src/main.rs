mod commands;
mod output;
mod svg;
mod values;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

/// Residual-life tables, censored-data model fitting and prediction for
/// parametric survival distributions.
#[derive(Debug, Parser)]
#[command(name = "rlife", version, about)]
struct Cli {
    /// Output format for results printed to stdout.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "RLIFE_FORMAT",
        default_value = "table"
    )]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Residual life of a distribution at given elapsed lifetimes.
    Residlife(ResidlifeArgs),
    /// Fit a distribution to right-censored data and save the model.
    Fit(FitArgs),
    /// Residual life from a saved model for each row of new data.
    Predict(PredictArgs),
    /// Write residual life over a range of lifetimes as CSV or SVG.
    Curve(CurveArgs),
    /// Draw a seeded, right-censored sample from a distribution.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Mean,
    Median,
    Percentile,
    All,
}

impl From<Kind> for residual_life::ResidualLifeType {
    fn from(k: Kind) -> Self {
        use residual_life::ResidualLifeType as T;
        match k {
            Kind::Mean => T::Mean,
            Kind::Median => T::Median,
            Kind::Percentile => T::Percentile,
            Kind::All => T::All,
        }
    }
}

#[derive(Debug, Args)]
struct DistArgs {
    /// Distribution name, e.g. weibull, gengamma.orig, genf.
    #[arg(long)]
    dist: String,
    /// Parameters as name=value pairs in order, e.g. shape=1.272,scale=6.191.
    #[arg(long)]
    params: String,
}

#[derive(Debug, Args)]
struct SummaryArgs {
    /// Probability for the percentile residual life.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Which summary to report.
    #[arg(long = "type", value_enum, default_value = "mean")]
    kind: Kind,
}

#[derive(Debug, Args)]
struct ResidlifeArgs {
    /// Elapsed lifetimes: a comma list or an inclusive start:stop:step range.
    #[arg(long)]
    values: String,
    #[command(flatten)]
    dist: DistArgs,
    #[command(flatten)]
    summary: SummaryArgs,
}

#[derive(Debug, Args)]
struct FitArgs {
    /// CSV file with a header row.
    #[arg(long)]
    data: PathBuf,
    /// Column holding survival or censoring times.
    #[arg(long)]
    time: String,
    /// Column holding the event indicator (1 = event, 0 = censored).
    #[arg(long)]
    event: String,
    #[arg(long)]
    dist: String,
    /// Covariates acting on the location parameter, comma separated.
    #[arg(long, value_delimiter = ',')]
    covariates: Vec<String>,
    /// Numeric covariates to treat as categorical.
    #[arg(long, value_delimiter = ',')]
    factors: Vec<String>,
    /// Where to write the model file.
    #[arg(long, default_value = "model.json")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct PredictArgs {
    /// Model file written by `rlife fit`.
    #[arg(long)]
    model: PathBuf,
    /// Elapsed lifetime.
    #[arg(long)]
    life: f64,
    #[command(flatten)]
    summary: SummaryArgs,
    /// CSV of covariate rows; defaults to the rows the model was fitted on.
    #[arg(long)]
    newdata: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Plot {
    Csv,
    Svg,
}

#[derive(Debug, Args)]
struct CurveArgs {
    /// Model file; alternatively give --dist and --params.
    #[arg(long, conflicts_with_all = ["dist", "params"])]
    model: Option<PathBuf>,
    #[arg(long, requires = "params")]
    dist: Option<String>,
    #[arg(long, requires = "dist")]
    params: Option<String>,
    /// CSV of covariate rows for a model with covariates.
    #[arg(long, requires = "model")]
    newdata: Option<PathBuf>,
    /// 1-based row of the covariate data to draw.
    #[arg(long, default_value_t = 1)]
    row: usize,
    /// Lifetimes as start:stop:step or a comma list.
    #[arg(long)]
    life: String,
    #[command(flatten)]
    summary: SummaryArgs,
    /// Output file.
    #[arg(long)]
    out: PathBuf,
    /// File format; inferred from the extension of --out when omitted.
    #[arg(long, value_enum)]
    plot: Option<Plot>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    dist: DistArgs,
    /// Number of observations.
    #[arg(long)]
    n: usize,
    /// Target fraction of censored observations.
    #[arg(long, default_value_t = 0.0)]
    censor: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit_code)
        }
    }
}
