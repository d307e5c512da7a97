//! Command implementations behind the `graphtik` binary.

use std::path::Path;

use serde_json::json;

use crate::discretization::continuous_eigenvalues;
use crate::error::Result;
use crate::harness::config::{hash_json, ExperimentConfig, ForwardMethod};
use crate::harness::experiment::{forward_spectrum, median, OperatorKey, PreparedCell};
use crate::harness::figures::emit_figure_data;
use crate::harness::report::{timestamp, CellRecord, Dataset, ExperimentReport, Field, Metric, SolutionSample, FORMAT_VERSION};
use crate::harness::tables::{approximation_error_for, run_table};
use crate::metrics::SpectralErrorReport;

/// What a command produced: a CSV-able dataset, plus a full report when the
/// command ran restoration cells.
#[derive(Debug, Clone)]
pub struct Output {
    pub dataset: Dataset,
    pub config: serde_json::Value,
    pub config_hash: String,
    pub report: Option<ExperimentReport>,
    /// One-line human summary for stderr.
    pub summary: String,
}

impl Output {
    fn new(dataset: Dataset, config: serde_json::Value, summary: String) -> Self {
        Self {
            config_hash: hash_json(&config),
            dataset,
            config,
            report: None,
            summary,
        }
    }

    pub fn csv(&self) -> String {
        self.dataset.to_csv(&self.config_hash)
    }

    pub fn json(&self) -> Result<String> {
        match &self.report {
            Some(r) => r.to_json(),
            None => Ok(serde_json::to_string_pretty(&json!({
                "format_version": FORMAT_VERSION,
                "config": self.config,
                "config_hash": self.config_hash,
                "dataset": self.dataset,
            }))?),
        }
    }

    /// Writes CSV to `out` (stdout when `None`) and JSON to `json` if given.
    pub fn write(&self, out: Option<&Path>, json: Option<&Path>) -> Result<()> {
        match out {
            Some(p) => std::fs::write(p, self.csv())?,
            None => print!("{}", self.csv()),
        }
        if let Some(p) = json {
            std::fs::write(p, self.json()?)?;
        }
        Ok(())
    }
}

/// Weyl-ordered spectrum of one discretization against `λ_m`.
pub fn spectrum(config: &ExperimentConfig) -> Result<Output> {
    config.validate()?;
    let discrete = forward_spectrum(OperatorKey::from_config(config))?;
    let continuous = continuous_eigenvalues(&config.example.problem(), config.n)?;
    let report = SpectralErrorReport::new(&discrete, &continuous)?;
    let mut d = Dataset::new(&["m", "discrete", "continuous", "lsre"]);
    for m in 1..=config.n {
        d.push(vec![
            Field::Num(m as f64),
            discrete[m - 1].into(),
            continuous[m - 1].into(),
            report.at(m).into(),
        ]);
    }
    let summary = format!("{} n={} msre={:.4e}", config.method.label(), config.n, report.msre);
    Ok(Output::new(d, json!({ "command": "spectrum", "config": config }), summary))
}

/// Forward-error table for both discretizations.
pub fn approx_error(config: &ExperimentConfig) -> Result<Output> {
    config.validate()?;
    let mut d = Dataset::new(&["method", "n", "max_abs_error"]);
    let mut parts = Vec::new();
    for method in ForwardMethod::BOTH {
        let e = approximation_error_for(config, config.example, config.test_function, method, config.n)?;
        parts.push(format!("{}={e:.4e}", method.label()));
        d.push(vec![method.label().into(), Field::Num(config.n as f64), e.into()]);
    }
    Ok(Output::new(d, json!({ "command": "approx-error", "config": config }), parts.join(" ")))
}

/// Restoration of one cell over all configured seeds. The dataset holds the
/// first seed's solution next to the truth.
pub fn deblur(config: &ExperimentConfig) -> Result<Output> {
    config.validate()?;
    let started_at = timestamp();
    let cell = PreparedCell::new(config)?;
    let runs = cell.run_all(config.penalty)?;
    let first = &runs[0];
    let per_seed: Vec<f64> = runs.iter().map(|r| r.rre).collect();
    let mut d = Dataset::new(&["x", "f_true", "f_reconstructed", "noisy_data"]);
    for (i, x) in cell.grid().nodes().into_iter().enumerate() {
        d.push(vec![
            Field::Num(x),
            first.reference[i].into(),
            first.sweep.best.solution[i].into(),
            first.noisy_data[i].into(),
        ]);
    }
    let value = median(&per_seed);
    let summary = format!(
        "rre={:.4e} (median over {} seed(s)), alpha={:.4e} (seed {})",
        value.unwrap_or(f64::NAN),
        runs.len(),
        first.sweep.best.alpha,
        first.seed
    );
    let config_value = json!({ "command": "deblur", "config": config });
    let mut out = Output::new(d, config_value.clone(), summary);
    out.report = Some(ExperimentReport {
        format_version: FORMAT_VERSION.into(),
        name: "deblur".into(),
        config: config_value,
        config_hash: out.config_hash.clone(),
        seeds: config.seeds.clone(),
        cells: vec![CellRecord {
            row: format!("{} {}", config.test_function, config.method.label()),
            column: config.penalty.label().into(),
            metric: Metric::Rre,
            value,
            alphas: runs.iter().map(|r| r.sweep.best.alpha).collect(),
            per_seed,
            error: None,
            sample: Some(SolutionSample {
                seed: first.seed,
                solution: first.sweep.best.solution.clone(),
                reference: first.reference.clone(),
            }),
        }],
        started_at,
        finished_at: timestamp(),
    });
    Ok(out)
}

pub fn table(id: u8, seeds: &[u64], base: &ExperimentConfig) -> Result<Output> {
    let report = run_table(id, seeds, base)?;
    let failed = report.failures().count();
    let summary = format!("table {id}: {} cells, {failed} failed", report.cells.len());
    Ok(Output {
        dataset: report.to_dataset(),
        config: report.config.clone(),
        config_hash: report.config_hash.clone(),
        report: Some(report),
        summary,
    })
}

pub fn figure(id: u8, base: &ExperimentConfig) -> Result<Output> {
    let d = emit_figure_data(id, base)?;
    let summary = format!("figure {id}: {} rows x {} columns", d.rows.len(), d.columns.len());
    Ok(Output::new(d, json!({ "command": "figure", "figure": id, "config": base }), summary))
}
