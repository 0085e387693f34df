use std::collections::HashSet;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A column of a [`DataTable`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Column {
    Numeric(Vec<f64>),
    Text(Vec<String>),
}

impl Column {
    pub fn len(&self) -> usize {
        match self {
            Column::Numeric(v) => v.len(),
            Column::Text(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn subset(&self, rows: &[usize]) -> Column {
        match self {
            Column::Numeric(v) => Column::Numeric(rows.iter().map(|&i| v[i]).collect()),
            Column::Text(v) => Column::Text(rows.iter().map(|&i| v[i].clone()).collect()),
        }
    }
}

/// A single cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell<'a> {
    Number(f64),
    Text(&'a str),
}

impl Cell<'_> {
    /// The cell as a factor level label.
    pub fn label(&self) -> String {
        match self {
            Cell::Number(x) => x.to_string(),
            Cell::Text(s) => s.to_string(),
        }
    }
}

/// Named, rectangular columns of numbers or strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTable", into = "RawTable")]
pub struct DataTable {
    names: Vec<String>,
    columns: Vec<Column>,
    nrows: usize,
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    nrows: usize,
    columns: Vec<RawColumn>,
}

#[derive(Serialize, Deserialize)]
struct RawColumn {
    name: String,
    values: Column,
}

impl TryFrom<RawTable> for DataTable {
    type Error = Error;

    fn try_from(raw: RawTable) -> Result<Self> {
        if raw.columns.is_empty() {
            return Ok(DataTable::empty(raw.nrows));
        }
        let t = DataTable::from_columns(
            raw.columns
                .into_iter()
                .map(|c| (c.name, c.values))
                .collect(),
        )?;
        if t.nrows != raw.nrows {
            return Err(Error::Data(format!(
                "table declares {} rows but its columns hold {}",
                raw.nrows, t.nrows
            )));
        }
        Ok(t)
    }
}

impl From<DataTable> for RawTable {
    fn from(t: DataTable) -> Self {
        RawTable {
            nrows: t.nrows,
            columns: t
                .names
                .into_iter()
                .zip(t.columns)
                .map(|(name, values)| RawColumn { name, values })
                .collect(),
        }
    }
}

impl DataTable {
    /// Build from `(name, column)` pairs. Names must be unique and all
    /// columns the same length.
    pub fn from_columns(columns: Vec<(String, Column)>) -> Result<Self> {
        let nrows = columns.first().map_or(0, |(_, c)| c.len());
        let mut seen = HashSet::new();
        for (name, col) in &columns {
            if !seen.insert(name.as_str()) {
                return Err(Error::Data(format!("duplicate column '{name}'")));
            }
            if col.len() != nrows {
                return Err(Error::Data(format!(
                    "column '{name}' has {} rows, expected {nrows}",
                    col.len()
                )));
            }
            if let Column::Numeric(v) = col {
                if v.iter().any(|x| x.is_nan()) {
                    return Err(Error::InvalidColumn {
                        column: name.clone(),
                        reason: "contains missing values".into(),
                    });
                }
            }
        }
        let (names, columns) = columns.into_iter().unzip();
        Ok(Self {
            names,
            columns,
            nrows,
        })
    }

    /// A table with no columns and `nrows` rows, for intercept-only models.
    pub fn empty(nrows: usize) -> Self {
        Self {
            names: Vec::new(),
            columns: Vec::new(),
            nrows,
        }
    }

    /// Read CSV with a header row. A column whose every cell parses as a
    /// number is numeric, otherwise text. Empty cells are rejected.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers: Vec<String> = rdr
            .headers()
            .map_err(|e| Error::Data(e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        let mut cells: Vec<Vec<String>> = vec![Vec::new(); headers.len()];
        for (i, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::Data(e.to_string()))?;
            for (j, field) in record.iter().enumerate() {
                if field.is_empty() || field == "NA" {
                    return Err(Error::InvalidColumn {
                        column: headers[j].clone(),
                        reason: format!("missing value on data row {}", i + 1),
                    });
                }
                cells[j].push(field.to_string());
            }
        }
        let columns = headers
            .into_iter()
            .zip(cells)
            .map(|(name, raw)| {
                let parsed: Option<Vec<f64>> = raw
                    .iter()
                    .map(|s| s.parse::<f64>().ok().filter(|x| x.is_finite()))
                    .collect();
                let col = match parsed {
                    Some(v) if !raw.is_empty() => Column::Numeric(v),
                    _ => Column::Text(raw),
                };
                (name, col)
            })
            .collect();
        Self::from_columns(columns)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)
            .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
        Self::from_csv_reader(file)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| &self.columns[i])
    }

    pub fn cell(&self, name: &str, row: usize) -> Option<Cell<'_>> {
        self.column(name).map(|c| match c {
            Column::Numeric(v) => Cell::Number(v[row]),
            Column::Text(v) => Cell::Text(&v[row]),
        })
    }

    /// The named column as numbers.
    pub fn numeric(&self, name: &str) -> Result<&[f64]> {
        match self.column(name) {
            Some(Column::Numeric(v)) => Ok(v),
            Some(Column::Text(_)) => Err(Error::InvalidColumn {
                column: name.to_string(),
                reason: "expected numeric values".into(),
            }),
            None => Err(Error::MissingColumn(name.to_string())),
        }
    }

    /// A table holding only the named columns, in the given order.
    pub fn select(&self, names: &[&str]) -> Result<DataTable> {
        let mut columns = Vec::with_capacity(names.len());
        for &name in names {
            let col = self
                .column(name)
                .ok_or_else(|| Error::MissingColumn(name.to_string()))?;
            columns.push((name.to_string(), col.clone()));
        }
        let mut t = Self::from_columns(columns)?;
        t.nrows = self.nrows;
        Ok(t)
    }

    /// The rows at `indices`, in that order.
    pub fn take_rows(&self, indices: &[usize]) -> DataTable {
        DataTable {
            names: self.names.clone(),
            columns: self.columns.iter().map(|c| c.subset(indices)).collect(),
            nrows: indices.len(),
        }
    }

    /// Render as CSV with full-precision numbers.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.names).expect("in-memory write");
        for i in 0..self.nrows {
            let row: Vec<String> = self
                .columns
                .iter()
                .map(|c| match c {
                    Column::Numeric(v) => v[i].to_string(),
                    Column::Text(v) => v[i].clone(),
                })
                .collect();
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}
