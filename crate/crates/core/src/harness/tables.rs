//! The seven published tables, recomputed.
//!
//! 1. max-abs forward error for `f(x) = x`, example 2;
//! 2. LSRE at `m ∈ {1, 10, 50}`, example 2;
//! 3. MSRE, example 2;
//! 4. noiseless restoration of `f†₁`, example 1, `A = I`;
//! 5. kernel-matched restoration of `f†₃`, example 1, `ε = 0.1`;
//! 6. all test functions and penalties, example 1, `ε = 0.01`;
//! 7. all test functions and penalties, example 2, `ε = 0.02`.

use rayon::prelude::*;

use crate::discretization::continuous_eigenvalues;
use crate::error::{Error, Result};
use crate::harness::config::{hash_json, ExperimentConfig, ForwardMethod};
use crate::harness::experiment::{forward_operator, forward_spectrum, median, OperatorKey, PreparedCell};
use crate::harness::problems::{ExampleId, TestFunction};
use crate::harness::report::{timestamp, CellRecord, ExperimentReport, Metric, SolutionSample, FORMAT_VERSION};
use crate::metrics::{self, SpectralErrorReport};
use crate::penalty::PenaltyKind;

pub const APPROX_SIZES: [usize; 3] = [100, 1000, 2000];
pub const LSRE_INDICES: [usize; 3] = [1, 10, 50];
pub const MSRE_SIZES: [usize; 4] = [100, 500, 1000, 2000];
pub const RESTORATION_N: usize = 100;

pub fn size_label(n: usize) -> String {
    format!("n={n}")
}

pub fn lsre_row(method: ForwardMethod, m: usize) -> String {
    format!("{} m={m}", method.label())
}

pub fn restoration_row(f: TestFunction, method: ForwardMethod) -> String {
    format!("{f} {}", method.label())
}

/// Example, noise level, test functions and penalties of a restoration table.
pub fn restoration_layout(id: u8) -> Option<(ExampleId, f64, Vec<TestFunction>, Vec<PenaltyKind>)> {
    match id {
        4 => Some((ExampleId::Example1, 0.0, vec![TestFunction::F1], vec![PenaltyKind::Identity])),
        5 => Some((ExampleId::Example1, 0.1, vec![TestFunction::F3], vec![PenaltyKind::KernelMatched])),
        6 => Some((ExampleId::Example1, 0.01, TestFunction::ALL.to_vec(), PenaltyKind::TABLE_COLUMNS.to_vec())),
        7 => Some((ExampleId::Example2, 0.02, TestFunction::ALL.to_vec(), PenaltyKind::TABLE_COLUMNS.to_vec())),
        _ => None,
    }
}

fn key(base: &ExperimentConfig, example: ExampleId, method: ForwardMethod, n: usize) -> OperatorKey {
    OperatorKey::from_config(&ExperimentConfig {
        example,
        method,
        n,
        ..base.clone()
    })
}

/// Runs table `id` with the conventions of `base`; noisy cells use `seeds`.
/// Cell failures are recorded and the remaining cells still run.
pub fn run_table(id: u8, seeds: &[u64], base: &ExperimentConfig) -> Result<ExperimentReport> {
    base.validate()?;
    if seeds.is_empty() {
        return Err(Error::Config("at least one seed is required".into()));
    }
    let started_at = timestamp();
    let cells = match id {
        1 => approximation_table(base),
        2 => lsre_table(base),
        3 => msre_table(base),
        4..=7 => restoration_table(id, seeds, base),
        _ => return Err(Error::Config(format!("table id must be 1..=7, got {id}"))),
    };
    let config = serde_json::json!({ "table": id, "seeds": seeds, "base": base });
    Ok(ExperimentReport {
        format_version: FORMAT_VERSION.into(),
        name: format!("table {id}"),
        config_hash: hash_json(&config),
        config,
        seeds: seeds.to_vec(),
        cells,
        started_at,
        finished_at: timestamp(),
    })
}

/// `max_i |(K f)_i − K[f](x_i)|` for `f = f†₃` on example 2.
pub fn approximation_error(base: &ExperimentConfig, method: ForwardMethod, n: usize) -> Result<f64> {
    approximation_error_for(base, ExampleId::Example2, TestFunction::F3, method, n)
}

pub fn approximation_error_for(
    base: &ExperimentConfig,
    example: ExampleId,
    f: TestFunction,
    method: ForwardMethod,
    n: usize,
) -> Result<f64> {
    let k = forward_operator(key(base, example, method, n))?;
    let grid = k.grid;
    let samples = crate::harness::experiment::sample(f, &grid);
    let exact = match example.problem().forward_oracle.get(f.name()) {
        Some(u) => grid.nodes().into_iter().map(|x| u(x)).collect(),
        None => crate::harness::problems::synthesize_data(
            example,
            f,
            &grid,
            crate::harness::problems::SynthesisMode::Quadrature,
        )?,
    };
    metrics::max_abs_error(&k.apply(&samples), &exact)
}

/// LSRE/MSRE report of the example's forward operator against `λ_m`.
pub fn spectral_error(base: &ExperimentConfig, example: ExampleId, method: ForwardMethod, n: usize) -> Result<SpectralErrorReport> {
    let discrete = forward_spectrum(key(base, example, method, n))?;
    let continuous = continuous_eigenvalues(&example.problem(), n)?;
    SpectralErrorReport::new(&discrete, &continuous)
}

fn approximation_table(base: &ExperimentConfig) -> Vec<CellRecord> {
    let jobs: Vec<(ForwardMethod, usize)> = ForwardMethod::BOTH
        .iter()
        .flat_map(|&m| APPROX_SIZES.iter().map(move |&n| (m, n)))
        .collect();
    jobs.par_iter()
        .map(|&(method, n)| {
            let (row, col) = (method.label(), size_label(n));
            match approximation_error(base, method, n) {
                Ok(v) => CellRecord::value(row, col, Metric::MaxAbsError, v),
                Err(e) => CellRecord::failed(row, col, Metric::MaxAbsError, &e),
            }
        })
        .collect()
}

fn lsre_table(base: &ExperimentConfig) -> Vec<CellRecord> {
    let jobs: Vec<(ForwardMethod, usize)> = ForwardMethod::BOTH
        .iter()
        .flat_map(|&m| APPROX_SIZES.iter().map(move |&n| (m, n)))
        .collect();
    let reports: Vec<_> = jobs
        .par_iter()
        .map(|&(method, n)| spectral_error(base, ExampleId::Example2, method, n))
        .collect();
    let mut cells = Vec::new();
    for ((method, n), report) in jobs.iter().zip(reports) {
        for m in LSRE_INDICES {
            let (row, col) = (lsre_row(*method, m), size_label(*n));
            cells.push(match &report {
                Ok(r) => CellRecord::value(row, col, Metric::Lsre, r.at(m)),
                Err(e) => CellRecord::failed(row, col, Metric::Lsre, e),
            });
        }
    }
    // row-major: method, then m, then n
    cells.sort_by_key(|c| {
        let m = ForwardMethod::BOTH.iter().position(|x| c.row.starts_with(x.label()));
        let k = LSRE_INDICES.iter().position(|&i| c.row.ends_with(&format!("m={i}")));
        let n = APPROX_SIZES.iter().position(|&s| c.column == size_label(s));
        (m, k, n)
    });
    cells
}

fn msre_table(base: &ExperimentConfig) -> Vec<CellRecord> {
    let jobs: Vec<(ForwardMethod, usize)> = ForwardMethod::BOTH
        .iter()
        .flat_map(|&m| MSRE_SIZES.iter().map(move |&n| (m, n)))
        .collect();
    jobs.par_iter()
        .map(|&(method, n)| {
            let (row, col) = (method.label(), size_label(n));
            match spectral_error(base, ExampleId::Example2, method, n) {
                Ok(r) => CellRecord::value(row, col, Metric::Msre, r.msre),
                Err(e) => CellRecord::failed(row, col, Metric::Msre, &e),
            }
        })
        .collect()
}

fn restoration_table(id: u8, seeds: &[u64], base: &ExperimentConfig) -> Vec<CellRecord> {
    let (example, epsilon, functions, penalties) = restoration_layout(id).expect("restoration id");
    // noise-free cells do not depend on the seed
    let seeds: Vec<u64> = if epsilon == 0.0 { seeds[..1].to_vec() } else { seeds.to_vec() };
    let rows: Vec<(TestFunction, ForwardMethod)> = functions
        .iter()
        .flat_map(|&f| ForwardMethod::BOTH.iter().map(move |&m| (f, m)))
        .collect();
    let prepared: Vec<Result<PreparedCell>> = rows
        .par_iter()
        .map(|&(f, method)| {
            PreparedCell::new(&ExperimentConfig {
                example,
                test_function: f,
                method,
                n: RESTORATION_N,
                epsilon,
                seeds: seeds.clone(),
                ..base.clone()
            })
        })
        .collect();
    let jobs: Vec<(usize, PenaltyKind)> = (0..rows.len())
        .flat_map(|r| penalties.iter().map(move |&p| (r, p)))
        .collect();
    jobs.par_iter()
        .map(|&(r, penalty)| {
            let (f, method) = rows[r];
            let (row, col) = (restoration_row(f, method), penalty.label());
            let outcome = prepared[r].as_ref().map_err(clone_error).and_then(|cell| {
                seeds
                    .par_iter()
                    .map(|&s| cell.run(penalty, s))
                    .collect::<Result<Vec<_>>>()
            });
            match outcome {
                Ok(runs) => {
                    let per_seed: Vec<f64> = runs.iter().map(|o| o.rre).collect();
                    let first = &runs[0];
                    CellRecord {
                        row,
                        column: col.into(),
                        metric: Metric::Rre,
                        value: median(&per_seed),
                        alphas: runs.iter().map(|o| o.sweep.best.alpha).collect(),
                        per_seed,
                        error: None,
                        sample: Some(SolutionSample {
                            seed: first.seed,
                            solution: first.sweep.best.solution.clone(),
                            reference: first.reference.clone(),
                        }),
                    }
                }
                Err(e) => CellRecord::failed(
                    row.clone(),
                    col,
                    Metric::Rre,
                    &Error::Cell {
                        cell: format!("{row} / {col}"),
                        source: Box::new(e),
                    },
                ),
            }
        })
        .collect()
}

fn clone_error(e: &Error) -> Error {
    Error::numerical("cell preparation", e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_table_is_a_config_error() {
        let err = run_table(8, &[0], &ExperimentConfig::default()).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn layouts_have_the_published_shape() {
        let (_, _, f, p) = restoration_layout(6).unwrap();
        assert_eq!(f.len() * 2 * p.len(), 32);
        assert_eq!(restoration_layout(4).unwrap().1, 0.0);
    }
}
