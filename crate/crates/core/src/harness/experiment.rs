//! A single restoration experiment: forward operator, data, noise, penalty and
//! the oracle sweep.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::discretization::{
    build_galerkin_operator, graph_forward_operator, weyl_spectrum, DiscreteOperator, GalerkinLayout, Grid,
    StiffnessScaling,
};
use crate::error::{Error, Result};
use crate::harness::config::{ExperimentConfig, ForwardMethod};
use crate::harness::noise::{add_noise, NoiseModel};
use crate::harness::problems::{synthesize_data, ExampleId, TestFunction};
use crate::penalty::{build_penalty, PenaltyKind, PenaltySpec};
use crate::regularization::{alpha_sweep, SweepResult, TikhonovProblem};

/// Everything that determines a forward matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OperatorKey {
    pub example: ExampleId,
    pub method: ForwardMethod,
    pub n: usize,
    pub scaling: StiffnessScaling,
    pub layout: GalerkinLayout,
    pub quad_points: usize,
}

impl OperatorKey {
    pub fn from_config(c: &ExperimentConfig) -> Self {
        Self {
            example: c.example,
            method: c.method,
            n: c.n,
            scaling: c.stiffness_scaling,
            layout: c.layout(),
            quad_points: c.quad_points,
        }
    }

    pub fn build(&self) -> Result<DiscreteOperator> {
        let problem = self.example.problem();
        match self.method {
            ForwardMethod::Graph => graph_forward_operator(&problem, self.n, self.scaling),
            ForwardMethod::Galerkin => build_galerkin_operator(&problem, self.n, self.layout, self.quad_points),
        }
    }
}

type Slot<T> = Arc<OnceLock<std::result::Result<Arc<T>, String>>>;

/// Process-wide memo of forward operators and their spectra. Large operators
/// take seconds to build and several tables share them.
struct Memo<T> {
    slots: Mutex<HashMap<OperatorKey, Slot<T>>>,
}

impl<T> Memo<T> {
    fn new() -> Self {
        Self {
            slots: Mutex::new(HashMap::new()),
        }
    }

    fn get(&self, key: OperatorKey, make: impl FnOnce() -> Result<T>) -> Result<Arc<T>> {
        let slot = self.slots.lock().expect("memo lock").entry(key).or_default().clone();
        slot.get_or_init(|| make().map(Arc::new).map_err(|e| e.to_string()))
            .clone()
            .map_err(|detail| Error::numerical(format!("building {key:?}"), detail))
    }
}

fn operators() -> &'static Memo<DiscreteOperator> {
    static M: OnceLock<Memo<DiscreteOperator>> = OnceLock::new();
    M.get_or_init(Memo::new)
}

fn spectra() -> &'static Memo<Vec<f64>> {
    static M: OnceLock<Memo<Vec<f64>>> = OnceLock::new();
    M.get_or_init(Memo::new)
}

/// Forward operator for `key`, built once per process.
pub fn forward_operator(key: OperatorKey) -> Result<Arc<DiscreteOperator>> {
    operators().get(key, || key.build())
}

/// Eigenvalues of the forward operator in Weyl order, computed once per process.
pub fn forward_spectrum(key: OperatorKey) -> Result<Arc<Vec<f64>>> {
    spectra().get(key, || Ok(weyl_spectrum(forward_operator(key)?.as_ref())))
}

/// Result of one seed of one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellOutcome {
    pub seed: u64,
    pub rre: f64,
    pub sweep: SweepResult,
    pub reference: Vec<f64>,
    pub noisy_data: Vec<f64>,
}

/// A cell with its operator, clean data and reference solution in place,
/// ready to run any penalty and seed.
#[derive(Debug, Clone)]
pub struct PreparedCell {
    pub config: ExperimentConfig,
    pub forward: Arc<DiscreteOperator>,
    pub clean_data: Vec<f64>,
    pub reference: Vec<f64>,
}

impl PreparedCell {
    pub fn new(config: &ExperimentConfig) -> Result<Self> {
        config.validate()?;
        let forward = forward_operator(OperatorKey::from_config(config))?;
        let grid = forward.grid;
        let clean_data = synthesize_data(config.example, config.test_function, &grid, config.synthesis)?;
        let reference = sample(config.test_function, &grid);
        Ok(Self {
            config: config.clone(),
            forward,
            clean_data,
            reference,
        })
    }

    pub fn grid(&self) -> Grid {
        self.forward.grid
    }

    pub fn run(&self, penalty: PenaltyKind, seed: u64) -> Result<CellOutcome> {
        let c = &self.config;
        let noisy = add_noise(&self.clean_data, &NoiseModel { epsilon: c.epsilon, seed })?;
        let spec = PenaltySpec {
            kind: penalty,
            params: penalty.needs_data().then(|| c.similarity()).transpose()?,
            anchor: (penalty == PenaltyKind::KernelMatched).then(|| self.reference.clone()),
        };
        let a = build_penalty(&spec, self.grid(), Some(&noisy))?;
        let problem = TikhonovProblem::new(self.forward.as_ref().clone(), a, noisy.clone())?;
        let sweep = alpha_sweep(&problem, &c.alpha_grid, &self.reference, c.alpha_convention)?;
        Ok(CellOutcome {
            seed,
            rre: sweep.best.rre.expect("sweep records RRE"),
            sweep,
            reference: self.reference.clone(),
            noisy_data: noisy,
        })
    }

    /// Every configured seed, in order.
    pub fn run_all(&self, penalty: PenaltyKind) -> Result<Vec<CellOutcome>> {
        self.config.seeds.iter().map(|&s| self.run(penalty, s)).collect()
    }
}

/// `f†` sampled on the grid nodes.
pub fn sample(f: TestFunction, grid: &Grid) -> Vec<f64> {
    grid.nodes().into_iter().map(|x| f.eval(x)).collect()
}

/// Runs the configured cell for its first seed.
pub fn run_cell(config: &ExperimentConfig) -> Result<CellOutcome> {
    let seed = *config.seeds.first().ok_or_else(|| Error::Config("no seeds given".into()))?;
    PreparedCell::new(config)?.run(config.penalty, seed)
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let k = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[k] } else { 0.5 * (v[k - 1] + v[k]) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_of_odd_and_even() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(&[]), None);
    }

    #[test]
    fn noiseless_identity_cell_is_accurate() {
        let config = ExperimentConfig {
            test_function: TestFunction::F1,
            epsilon: 0.0,
            penalty: PenaltyKind::Identity,
            ..ExperimentConfig::default()
        };
        let out = run_cell(&config).unwrap();
        assert!(out.rre < 1e-5, "{}", out.rre);
    }

    #[test]
    fn operators_are_memoized() {
        let key = OperatorKey::from_config(&ExperimentConfig { n: 12, ..ExperimentConfig::default() });
        let a = forward_operator(key).unwrap();
        let b = forward_operator(key).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }

    #[test]
    fn same_seed_same_outcome() {
        let config = ExperimentConfig { n: 30, ..ExperimentConfig::default() };
        let cell = PreparedCell::new(&config).unwrap();
        assert_eq!(cell.run(PenaltyKind::DataGraph, 5).unwrap(), cell.run(PenaltyKind::DataGraph, 5).unwrap());
    }
}
