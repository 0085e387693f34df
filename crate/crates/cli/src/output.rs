//! Rendering of result tables as aligned text, CSV or JSON.

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// A cell of an output table.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Number(f64),
    Index(usize),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Number(v)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        self.rows.push(row);
    }

    /// Right-aligned columns with numbers to 7 significant digits.
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = std::iter::once(self.headers.clone())
            .chain(self.rows.iter().map(|r| {
                r.iter()
                    .map(|c| match c {
                        Cell::Text(s) => s.clone(),
                        Cell::Number(v) => display_number(*v),
                        Cell::Index(i) => i.to_string(),
                    })
                    .collect()
            }))
            .collect();
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for row in cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    /// CSV with numbers at full round-trip precision.
    pub fn to_csv(&self) -> String {
        let mut out = csv_line(self.headers.iter().map(String::as_str));
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Text(s) => s.clone(),
                    Cell::Number(v) => exact_number(*v),
                    Cell::Index(i) => i.to_string(),
                })
                .collect();
            out.push_str(&csv_line(fields.iter().map(String::as_str)));
        }
        out
    }

    /// Column-oriented JSON object: header → array of values.
    pub fn columns_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (j, h) in self.headers.iter().enumerate() {
            let col: Vec<Value> = self
                .rows
                .iter()
                .map(|r| match &r[j] {
                    Cell::Text(s) => Value::String(s.clone()),
                    Cell::Number(v) => json_number(*v),
                    Cell::Index(i) => json!(i),
                })
                .collect();
            map.insert(h.clone(), Value::Array(col));
        }
        Value::Object(map)
    }
}

fn csv_line<'a>(fields: impl Iterator<Item = &'a str>) -> String {
    let quoted: Vec<String> = fields
        .map(|f| {
            if f.contains([',', '"', '\n']) {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.to_string()
            }
        })
        .collect();
    quoted.join(",") + "\n"
}

fn non_finite(v: f64) -> Option<&'static str> {
    if v.is_nan() {
        Some("NaN")
    } else if v == f64::INFINITY {
        Some("Inf")
    } else if v == f64::NEG_INFINITY {
        Some("-Inf")
    } else {
        None
    }
}

/// Shortest text that parses back to exactly `v`.
pub fn exact_number(v: f64) -> String {
    match non_finite(v) {
        Some(s) => s.to_string(),
        None => format!("{v:?}"),
    }
}

/// JSON numbers for finite values; `"NaN"`, `"Inf"` or `"-Inf"` strings
/// otherwise, since JSON has no literal for them.
pub fn json_number(v: f64) -> Value {
    match non_finite(v) {
        Some(s) => json!(s),
        None => json!(v),
    }
}

/// `v` to 7 significant digits with trailing zeros dropped, switching to
/// scientific notation outside `[1e-5, 1e15)`.
pub fn display_number(v: f64) -> String {
    if let Some(s) = non_finite(v) {
        return s.to_string();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{v:.6e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (6 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_significant_digits() {
        assert_eq!(display_number(5.2806182), "5.280618");
        assert_eq!(display_number(6.749310), "6.74931");
        assert_eq!(display_number(0.019722961), "0.01972296");
        assert_eq!(display_number(0.5), "0.5");
        assert_eq!(display_number(10.0), "10");
        assert_eq!(display_number(-2.25), "-2.25");
        assert_eq!(display_number(1234567.8), "1234568");
        assert_eq!(display_number(2.5e-7), "2.5e-7");
        assert_eq!(display_number(f64::NAN), "NaN");
        assert_eq!(display_number(f64::INFINITY), "Inf");
    }

    #[test]
    fn exact_numbers_round_trip() {
        for v in [0.1, 1.0 / 3.0, 1e-300, 5.280618231, 1e22] {
            assert_eq!(exact_number(v).parse::<f64>().unwrap(), v);
        }
        assert!(exact_number(f64::NAN).parse::<f64>().unwrap().is_nan());
        assert_eq!(
            exact_number(f64::INFINITY).parse::<f64>().unwrap(),
            f64::INFINITY
        );
    }

    #[test]
    fn aligned_text() {
        let mut t = Table::new(["values", "mean"]);
        t.push(vec![1.0.into(), 5.2806182.into()]);
        t.push(vec![10.0.into(), f64::NAN.into()]);
        assert_eq!(
            t.to_text(),
            "values      mean\n     1  5.280618\n    10       NaN\n"
        );
        assert_eq!(t.to_csv(), "values,mean\n1.0,5.2806182\n10.0,NaN\n");
    }
}
