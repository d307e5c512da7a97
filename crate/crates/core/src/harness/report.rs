//! Reports and tabular output.
//!
//! CSV files start with `# graphtik v1, config-hash=<hex>` followed by a header
//! row; floats carry 9 significant digits.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics;

pub const FORMAT_VERSION: &str = "graphtik v1";

/// Float with 9 significant digits.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.8e}")
    } else {
        format!("{x}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Field {
    Num(f64),
    Text(String),
    Missing,
}

impl Field {
    fn render(&self) -> String {
        match self {
            Field::Num(x) => format_float(*x),
            Field::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Field::Text(s) => s.clone(),
            Field::Missing => String::new(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Field::Num(x) => Some(*x),
            _ => None,
        }
    }
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Num(x)
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(s.to_string())
    }
}

impl From<String> for Field {
    fn from(s: String) -> Self {
        Field::Text(s)
    }
}

impl From<Option<f64>> for Field {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Field::Missing, Field::Num)
    }
}

/// Column-named rows.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Field>>,
}

impl Dataset {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Field>) {
        assert_eq!(row.len(), self.columns.len(), "row width differs from header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<Field>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k].clone()).collect())
    }

    pub fn numeric_column(&self, name: &str) -> Option<Vec<f64>> {
        self.column(name)?.iter().map(Field::as_f64).collect()
    }

    pub fn to_csv(&self, config_hash: &str) -> String {
        let mut out = format!("# {FORMAT_VERSION}, config-hash={config_hash}\n");
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(Field::render).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path, config_hash: &str) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.to_csv(config_hash).as_bytes())?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Rre,
    Lsre,
    Msre,
    MaxAbsError,
}

impl Metric {
    pub fn label(self) -> &'static str {
        match self {
            Metric::Rre => "rre",
            Metric::Lsre => "lsre",
            Metric::Msre => "msre",
            Metric::MaxAbsError => "max_abs_error",
        }
    }
}

/// First-seed restoration kept for recomputation and plotting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSample {
    pub seed: u64,
    pub solution: Vec<f64>,
    pub reference: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub row: String,
    pub column: String,
    pub metric: Metric,
    /// The metric, or its median over seeds for noisy cells.
    pub value: Option<f64>,
    pub per_seed: Vec<f64>,
    /// Chosen `α` per seed.
    pub alphas: Vec<f64>,
    pub error: Option<String>,
    pub sample: Option<SolutionSample>,
}

impl CellRecord {
    pub fn value(row: impl Into<String>, column: impl Into<String>, metric: Metric, value: f64) -> Self {
        Self {
            row: row.into(),
            column: column.into(),
            metric,
            value: Some(value),
            per_seed: Vec::new(),
            alphas: Vec::new(),
            error: None,
            sample: None,
        }
    }

    pub fn failed(row: impl Into<String>, column: impl Into<String>, metric: Metric, error: &Error) -> Self {
        Self {
            row: row.into(),
            column: column.into(),
            metric,
            value: None,
            per_seed: Vec::new(),
            alphas: Vec::new(),
            error: Some(error.to_string()),
            sample: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub format_version: String,
    pub name: String,
    pub config: serde_json::Value,
    pub config_hash: String,
    pub seeds: Vec<u64>,
    pub cells: Vec<CellRecord>,
    pub started_at: String,
    pub finished_at: String,
}

impl ExperimentReport {
    pub fn cell(&self, row: &str, column: &str) -> Option<&CellRecord> {
        self.cells.iter().find(|c| c.row == row && c.column == column)
    }

    pub fn get(&self, row: &str, column: &str) -> Option<f64> {
        self.cell(row, column)?.value
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellRecord> {
        self.cells.iter().filter(|c| c.error.is_some())
    }

    pub fn to_dataset(&self) -> Dataset {
        let mut d = Dataset::new(&["row", "column", "metric", "value", "median_alpha", "seeds_ok", "error"]);
        for c in &self.cells {
            let alpha = crate::harness::experiment::median(&c.alphas);
            d.push(vec![
                c.row.as_str().into(),
                c.column.as_str().into(),
                c.metric.label().into(),
                c.value.into(),
                alpha.into(),
                Field::Text(c.per_seed.len().to_string()),
                c.error.clone().map_or(Field::Missing, Field::Text),
            ]);
        }
        d
    }

    pub fn to_csv(&self) -> String {
        self.to_dataset().to_csv(&self.config_hash)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Recomputes the first stored sample's RRE and compares it with the
    /// recorded first-seed value.
    pub fn verify_sample(&self) -> Result<bool> {
        let Some(cell) = self.cells.iter().find(|c| c.sample.is_some() && !c.per_seed.is_empty()) else {
            return Ok(true);
        };
        let s = cell.sample.as_ref().expect("filtered");
        let again = metrics::rre(&s.solution, &s.reference)?;
        Ok(again == cell.per_seed[0])
    }

    pub fn without_timestamps(&self) -> Self {
        Self {
            started_at: String::new(),
            finished_at: String::new(),
            ..self.clone()
        }
    }
}

pub fn timestamp() -> String {
    chrono::Utc::now().to_rfc3339()
}
