//! Data behind the three figures.
//!
//! Figure 1 compares `1/(n²λ_m)` for both discretizations with the continuous
//! operator (example 2). Figures 2 and 3 hold the regularized solutions of
//! `f†₄` on example 1 (`ε = 0.01`) and of `f†₃` on example 2 (`ε = 0.02`).

use rayon::prelude::*;

use crate::discretization::continuous_eigenvalues;
use crate::error::{Error, Result};
use crate::harness::config::{ExperimentConfig, ForwardMethod};
use crate::harness::experiment::{forward_spectrum, OperatorKey, PreparedCell};
use crate::harness::problems::{ExampleId, TestFunction};
use crate::harness::report::{Dataset, Field};
use crate::penalty::PenaltyKind;

pub fn figure_column(method: ForwardMethod, penalty: PenaltyKind) -> String {
    format!("{}_{}", method.label(), penalty.label())
}

/// Builds the dataset of figure `id`. `base` supplies `n` for figure 1, the
/// seed (first entry) for figures 2–3, and all numerical conventions.
pub fn emit_figure_data(id: u8, base: &ExperimentConfig) -> Result<Dataset> {
    base.validate()?;
    match id {
        1 => eigenvalue_figure(base),
        2 => solution_figure(base, ExampleId::Example1, TestFunction::F4, 0.01),
        3 => solution_figure(base, ExampleId::Example2, TestFunction::F3, 0.02),
        _ => Err(Error::Config(format!("figure id must be 1..=3, got {id}"))),
    }
}

fn normalized_reciprocals(eigs: &[f64], n: usize) -> Vec<f64> {
    let n2 = (n as f64).powi(2);
    let mut v: Vec<f64> = eigs.iter().map(|l| 1.0 / (n2 * l)).collect();
    v.sort_by(f64::total_cmp);
    v
}

fn eigenvalue_figure(base: &ExperimentConfig) -> Result<Dataset> {
    let n = base.n;
    let example = ExampleId::Example2;
    let curves = ForwardMethod::BOTH
        .par_iter()
        .map(|&method| {
            let key = OperatorKey::from_config(&ExperimentConfig {
                example,
                method,
                ..base.clone()
            });
            Ok(normalized_reciprocals(&forward_spectrum(key)?, n))
        })
        .collect::<Result<Vec<_>>>()?;
    let continuous = normalized_reciprocals(&continuous_eigenvalues(&example.problem(), n)?, n);
    let mut d = Dataset::new(&["m_over_n", "graph", "galerkin", "continuous"]);
    for m in 0..n {
        d.push(vec![
            Field::Num((m + 1) as f64 / n as f64),
            curves[0][m].into(),
            curves[1][m].into(),
            continuous[m].into(),
        ]);
    }
    Ok(d)
}

fn solution_figure(base: &ExperimentConfig, example: ExampleId, f: TestFunction, epsilon: f64) -> Result<Dataset> {
    let seed = base.seeds[0];
    let combos: Vec<(ForwardMethod, PenaltyKind)> = ForwardMethod::BOTH
        .iter()
        .flat_map(|&m| PenaltyKind::TABLE_COLUMNS.iter().map(move |&p| (m, p)))
        .collect();
    let cells = ForwardMethod::BOTH
        .par_iter()
        .map(|&method| {
            PreparedCell::new(&ExperimentConfig {
                example,
                test_function: f,
                method,
                epsilon,
                ..base.clone()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let solutions = combos
        .par_iter()
        .map(|&(method, penalty)| {
            let cell = &cells[ForwardMethod::BOTH.iter().position(|&m| m == method).expect("known")];
            Ok(cell.run(penalty, seed)?.sweep.best.solution)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut columns = vec!["x".to_string(), "f_true".to_string()];
    columns.extend(combos.iter().map(|&(m, p)| figure_column(m, p)));
    let mut d = Dataset {
        columns,
        rows: Vec::new(),
    };
    let grid = cells[0].grid();
    for (i, x) in grid.nodes().into_iter().enumerate() {
        let mut row = vec![Field::Num(x), Field::Num(cells[0].reference[i])];
        row.extend(solutions.iter().map(|s| Field::Num(s[i])));
        d.push(row);
    }
    Ok(d)
}
