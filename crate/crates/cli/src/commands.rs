use std::path::Path;

use residual_life::fitting::{fit_with, simulate, CensoredSample, FitOptions, FitResult};
use residual_life::regression::DataTable;
use residual_life::{
    predict_residual_life, residual_life_table, DistTag, Distribution, ResidualLifeQuery,
    ResidualLifeTable, ResidualLifeType, SurvivalModel,
};
use serde_json::{json, Value};

use crate::output::{exact_number, json_number, Cell, Format, Table};
use crate::values::{parse_params, parse_values};
use crate::{Cli, Command, CurveArgs, FitArgs, Plot, PredictArgs, ResidlifeArgs, SimulateArgs};

#[derive(Debug)]
pub struct CliError {
    pub exit_code: u8,
    pub message: String,
}

/// Bad flags or input files: exit status 2.
fn usage(e: impl ToString) -> CliError {
    CliError {
        exit_code: 2,
        message: e.to_string(),
    }
}

/// Failures after the inputs were accepted: exit status 1.
fn failed(e: impl ToString) -> CliError {
    CliError {
        exit_code: 1,
        message: e.to_string(),
    }
}

type Outcome = Result<String, CliError>;

pub fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Residlife(a) => residlife(a, format),
        Command::Fit(a) => fit(a, format),
        Command::Predict(a) => predict(a, format),
        Command::Curve(a) => curve(a, format),
        Command::Simulate(a) => simulate_sample(a, format),
    }
}

fn distribution(dist: &str, params: &str) -> Result<Distribution, CliError> {
    let params = parse_params(params).map_err(usage)?;
    let named: Vec<(&str, f64)> = params.iter().map(|(n, v)| (n.as_str(), *v)).collect();
    Distribution::from_named(dist, &named).map_err(usage)
}

fn check_p(p: f64) -> Result<(), CliError> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(usage(format!(
            "--p must lie strictly between 0 and 1, got {p}"
        )))
    }
}

fn params_json(d: &Distribution) -> Value {
    let map: serde_json::Map<String, Value> = d
        .params()
        .into_iter()
        .map(|(n, v)| (n.to_string(), json_number(v)))
        .collect();
    Value::Object(map)
}

fn life_table(first: &str, table: &ResidualLifeTable) -> Table {
    let mut headers = vec![first.to_string()];
    headers.extend(table.columns.iter().map(|(n, _)| n.clone()));
    let mut out = Table::new(headers);
    for (i, &v) in table.values.iter().enumerate() {
        let mut row = vec![Cell::Number(v)];
        row.extend(table.row(i).into_iter().map(Cell::Number));
        out.push(row);
    }
    out
}

fn render(table: &Table, format: Format, json: impl FnOnce(Value) -> Value) -> String {
    match format {
        Format::Table => table.to_text(),
        Format::Csv => table.to_csv(),
        Format::Json => {
            serde_json::to_string_pretty(&json(table.columns_json())).expect("json output") + "\n"
        }
    }
}

fn residlife(a: ResidlifeArgs, format: Format) -> Outcome {
    let values = parse_values(&a.values).map_err(usage)?;
    let dist = distribution(&a.dist.dist, &a.dist.params)?;
    check_p(a.summary.p)?;
    let kind: ResidualLifeType = a.summary.kind.into();
    let query = ResidualLifeQuery::new(values)
        .with_p(a.summary.p)
        .with_kind(kind);
    query.validate().map_err(usage)?;
    let result = residual_life_table(&dist, &query).map_err(failed)?;
    let table = life_table("values", &result);
    Ok(render(&table, format, |columns| {
        json!({
            "dist": dist.tag().name(),
            "params": params_json(&dist),
            "type": kind.name(),
            "p": a.summary.p,
            "table": columns,
        })
    }))
}

fn read_csv(path: &Path) -> Result<DataTable, CliError> {
    DataTable::from_csv_path(path).map_err(usage)
}

fn fit(a: FitArgs, format: Format) -> Outcome {
    let tag: DistTag = a.dist.parse().map_err(usage)?;
    let data = read_csv(&a.data)?;
    let sample = CensoredSample::from_table(&data, &a.time, &a.event).map_err(usage)?;
    let covariates: Vec<&str> = a.covariates.iter().map(String::as_str).collect();
    for name in covariates
        .iter()
        .copied()
        .chain(a.factors.iter().map(String::as_str))
    {
        if data.column(name).is_none() {
            return Err(usage(residual_life::Error::MissingColumn(name.to_string())));
        }
    }
    let opts = FitOptions {
        factors: a.factors.clone(),
        ..FitOptions::default()
    };
    let fitted = fit_with(tag, &sample, &covariates, &opts).map_err(failed)?;
    fitted.model.save(&a.out).map_err(failed)?;
    let r = &fitted.result;
    if !r.converged {
        eprintln!("warning: the optimizer did not converge; estimates are the best point found");
    }
    let table = fit_table(r);
    Ok(match format {
        Format::Table => format!(
            "{}\nN = {}, Events: {}, Log-likelihood = {}\nModel written to {}\n",
            table.to_text(),
            r.n,
            r.events,
            crate::output::display_number(r.loglik),
            a.out.display()
        ),
        Format::Csv => table.to_csv(),
        Format::Json => {
            let mut v = serde_json::to_value(r).expect("fit result serializes");
            v["model_file"] = json!(a.out.display().to_string());
            for key in ["estimates", "coefficients"] {
                for e in v[key].as_array_mut().expect("array") {
                    for f in ["estimate", "lower", "upper", "se"] {
                        let x = e[f].as_f64().unwrap_or(f64::NAN);
                        e[f] = json_number(x);
                    }
                }
            }
            serde_json::to_string_pretty(&v).expect("json output") + "\n"
        }
    })
}

fn fit_table(r: &FitResult) -> Table {
    let mut t = Table::new(["", "est", "L95", "U95", "se"]);
    for e in r.estimates.iter().chain(&r.coefficients) {
        t.push(vec![
            e.name.as_str().into(),
            e.estimate.into(),
            e.lower.into(),
            e.upper.into(),
            e.se.into(),
        ]);
    }
    t
}

fn load_model(path: &Path) -> Result<SurvivalModel, CliError> {
    SurvivalModel::load(path).map_err(usage)
}

fn predict(a: PredictArgs, format: Format) -> Outcome {
    let model = load_model(&a.model)?;
    check_p(a.summary.p)?;
    if !(a.life.is_finite() && a.life >= 0.0) {
        return Err(usage(format!(
            "--life must be a nonnegative number, got {}",
            a.life
        )));
    }
    let newdata = a.newdata.as_deref().map(read_csv).transpose()?;
    let kind: ResidualLifeType = a.summary.kind.into();
    let result = predict_residual_life(&model, a.life, a.summary.p, kind, newdata.as_ref())
        .map_err(failed)?;
    // number the rows rather than repeating the constant life
    let mut table = life_table("row", &result);
    for (i, row) in table.rows.iter_mut().enumerate() {
        row[0] = Cell::Index(i + 1);
    }
    Ok(render(&table, format, |columns| {
        json!({
            "dist": model.dist().name(),
            "life": a.life,
            "type": kind.name(),
            "p": a.summary.p,
            "table": columns,
        })
    }))
}

fn curve(a: CurveArgs, format: Format) -> Outcome {
    let lives = parse_values(&a.life).map_err(usage)?;
    check_p(a.summary.p)?;
    if let Some(v) = lives.iter().find(|v| **v < 0.0) {
        return Err(usage(format!("lifetimes must be nonnegative, got {v}")));
    }
    let plot = match a.plot {
        Some(p) => p,
        None if a
            .out
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("svg")) =>
        {
            Plot::Svg
        }
        None => Plot::Csv,
    };
    let kind: ResidualLifeType = a.summary.kind.into();
    if plot == Plot::Svg && kind == ResidualLifeType::All {
        return Err(usage(
            "an SVG curve shows one summary; choose mean, median or percentile",
        ));
    }
    let (table, title) = match (&a.model, &a.dist, &a.params) {
        (Some(path), _, _) => {
            let model = load_model(path)?;
            let newdata = a.newdata.as_deref().map(read_csv).transpose()?;
            let row = curve_row(&model, newdata.as_ref(), a.row)?;
            let mut columns: Vec<(String, Vec<f64>)> = kind
                .columns()
                .iter()
                .map(|c| (c.to_string(), Vec::with_capacity(lives.len())))
                .collect();
            for &life in &lives {
                let t = predict_residual_life(&model, life, a.summary.p, kind, row.as_ref())
                    .map_err(failed)?;
                for (col, (_, v)) in columns.iter_mut().zip(t.columns) {
                    col.1.push(v[0]);
                }
            }
            let table = ResidualLifeTable {
                values: lives.clone(),
                columns,
            };
            (table, format!("{} model", model.dist().name()))
        }
        (None, Some(dist), Some(params)) => {
            let d = distribution(dist, params)?;
            let query = ResidualLifeQuery::new(lives.clone())
                .with_p(a.summary.p)
                .with_kind(kind);
            (
                residual_life_table(&d, &query).map_err(failed)?,
                d.to_string(),
            )
        }
        _ => return Err(usage("give either --model or both --dist and --params")),
    };

    let text = match plot {
        Plot::Csv => life_table("life", &table).to_csv(),
        Plot::Svg => {
            let ys = &table.columns[0].1;
            let points: Vec<(f64, f64)> = lives.iter().copied().zip(ys.iter().copied()).collect();
            crate::svg::line_chart(
                &points,
                "Survival Time",
                &y_label(kind, a.summary.p),
                &title,
            )
        }
    };
    std::fs::write(&a.out, text)
        .map_err(|e| failed(format!("cannot write {}: {e}", a.out.display())))?;
    let points = table.len();
    Ok(match format {
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "out": a.out.display().to_string(),
                "format": if plot == Plot::Svg { "svg" } else { "csv" },
                "points": points,
            }))
            .expect("json output")
                + "\n"
        }
        _ => format!("wrote {points} points to {}\n", a.out.display()),
    })
}

fn y_label(kind: ResidualLifeType, p: f64) -> String {
    match kind {
        ResidualLifeType::Median => "Median residual life".into(),
        ResidualLifeType::Percentile => format!("{} percentile residual life", exact_number(p)),
        _ => "MRL".into(),
    }
}

/// The single covariate row a model curve is drawn for, or `None` for an
/// intercept-only model.
fn curve_row(
    model: &SurvivalModel,
    newdata: Option<&DataTable>,
    row: usize,
) -> Result<Option<DataTable>, CliError> {
    if model.schema().is_empty() {
        return Ok(None);
    }
    let source = newdata
        .or(model.training_data())
        .ok_or_else(|| usage("the model has covariates; supply --newdata"))?;
    if row == 0 || row > source.nrows() {
        return Err(usage(format!(
            "--row must be between 1 and {}, got {row}",
            source.nrows()
        )));
    }
    Ok(Some(source.take_rows(&[row - 1])))
}

fn simulate_sample(a: SimulateArgs, format: Format) -> Outcome {
    let dist = distribution(&a.dist.dist, &a.dist.params)?;
    if a.n == 0 {
        return Err(usage("--n must be positive"));
    }
    if !(0.0..1.0).contains(&a.censor) {
        return Err(usage(format!(
            "--censor must lie in [0, 1), got {}",
            a.censor
        )));
    }
    let sample = simulate(&dist, a.n, a.censor, a.seed).map_err(failed)?;
    let mut csv = String::from("time,status\n");
    for (t, e) in sample.time().iter().zip(sample.event()) {
        csv.push_str(&format!("{},{}\n", exact_number(*t), u8::from(*e)));
    }
    let Some(out) = a.out else {
        return Ok(csv);
    };
    std::fs::write(&out, csv)
        .map_err(|e| failed(format!("cannot write {}: {e}", out.display())))?;
    Ok(match format {
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "out": out.display().to_string(),
                "n": sample.len(),
                "events": sample.events(),
            }))
            .expect("json output")
                + "\n"
        }
        _ => format!(
            "wrote {} observations ({} events) to {}\n",
            sample.len(),
            sample.events(),
            out.display()
        ),
    })
}
