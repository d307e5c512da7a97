//! The two model problems, the four test solutions, and synthetic data.

use std::collections::BTreeMap;
use std::f64::consts::E;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::discretization::{ContinuousProblem, GalerkinLayout, Grid, Kernel, RealFn, SpectrumLaw};
use crate::error::{Error, Result};
use crate::quadrature::{adaptive, GaussLegendre};

/// True solutions `f†₁ … f†₄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum TestFunction {
    F1,
    F2,
    F3,
    F4,
}

impl TestFunction {
    pub const ALL: [TestFunction; 4] = [TestFunction::F1, TestFunction::F2, TestFunction::F3, TestFunction::F4];

    pub fn eval(self, x: f64) -> f64 {
        match self {
            TestFunction::F1 => bump_source(x),
            TestFunction::F2 => x.powi(3) / 3.0 - x * x / 2.0,
            TestFunction::F3 => x,
            TestFunction::F4 => x.exp(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TestFunction::F1 => "f1",
            TestFunction::F2 => "f2",
            TestFunction::F3 => "f3",
            TestFunction::F4 => "f4",
        }
    }

    pub fn as_fn(self) -> impl Fn(f64) -> f64 + Send + Sync + Copy {
        move |x| self.eval(x)
    }
}

impl TryFrom<u8> for TestFunction {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(TestFunction::F1),
            2 => Ok(TestFunction::F2),
            3 => Ok(TestFunction::F3),
            4 => Ok(TestFunction::F4),
            _ => Err(format!("test function must be 1..=4, got {v}")),
        }
    }
}

impl From<TestFunction> for u8 {
    fn from(f: TestFunction) -> u8 {
        f as u8 + 1
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `[p₂² − p₃]·e^{4 − 1/p₁}` on `(0, 1)`, zero elsewhere, with
/// `p₁ = 1/4 − (x − 1/2)²`, `p₂ = 2(x − 1/2)/p₁²` and `p₃ = p₂′`. It is the
/// second derivative of the bump `e^{4 − 1/p₁}`.
fn bump_source(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    let c = x - 0.5;
    let p1 = 0.25 - c * c;
    let exponent = 4.0 - 1.0 / p1;
    if exponent < -700.0 {
        return 0.0;
    }
    let p2 = 2.0 * c / (p1 * p1);
    let p3 = (2.0 * p1 * p1 + 8.0 * c * c * p1) / p1.powi(4);
    (p2 * p2 - p3) * exponent.exp()
}

fn bump(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    let p1 = x * (1.0 - x);
    (4.0 - 1.0 / p1).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum ExampleId {
    /// `q ≡ 0`, kernel `y(x − 1)` for `y < x`: minus the Green function of `−d²/dx²`.
    Example1,
    /// `q ≡ −1`, kernel `sin(1 − x)·sin(y)/sin(1)` for `y < x`.
    Example2,
}

impl TryFrom<u8> for ExampleId {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(ExampleId::Example1),
            2 => Ok(ExampleId::Example2),
            _ => Err(format!("example must be 1 or 2, got {v}")),
        }
    }
}

impl From<ExampleId> for u8 {
    fn from(e: ExampleId) -> u8 {
        e as u8 + 1
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "example{}", u8::from(*self))
    }
}

fn oracle(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> RealFn {
    Arc::new(f)
}

impl ExampleId {
    pub fn problem(self) -> ContinuousProblem {
        match self {
            ExampleId::Example1 => {
                let mut forward_oracle = BTreeMap::new();
                forward_oracle.insert("f1".to_string(), oracle(bump));
                forward_oracle.insert(
                    "f2".to_string(),
                    oracle(|x| x.powi(5) / 60.0 - x.powi(4) / 24.0 + x / 40.0),
                );
                forward_oracle.insert("f3".to_string(), oracle(|x| (x.powi(3) - x) / 6.0));
                forward_oracle.insert("f4".to_string(), oracle(|x| x.exp() - 1.0 - (E - 1.0) * x));
                ContinuousProblem {
                    kernel: Kernel::semi_separable(|x| x - 1.0, |y| y),
                    potential: Arc::new(|_| 0.0),
                    orientation: -1.0,
                    spectrum: Some(SpectrumLaw::ConstantPotential(0.0)),
                    forward_oracle,
                }
            }
            ExampleId::Example2 => {
                let s1 = 1f64.sin();
                let c1 = 1f64.cos();
                let mut forward_oracle = BTreeMap::new();
                forward_oracle.insert(
                    "f2".to_string(),
                    oracle(move |x| {
                        -x.powi(3) / 3.0 + x * x / 2.0 + 2.0 * x - 1.0 + x.cos() - (7.0 / 6.0 + c1) / s1 * x.sin()
                    }),
                );
                forward_oracle.insert("f3".to_string(), oracle(move |x| x.sin() / s1 - x));
                forward_oracle.insert(
                    "f4".to_string(),
                    oracle(move |x| -x.exp() / 2.0 + x.cos() / 2.0 + (E - c1) / (2.0 * s1) * x.sin()),
                );
                ContinuousProblem {
                    kernel: Kernel::semi_separable(move |x| (1.0 - x).sin() / s1, f64::sin),
                    potential: Arc::new(|_| -1.0),
                    orientation: 1.0,
                    spectrum: Some(SpectrumLaw::ConstantPotential(-1.0)),
                    forward_oracle,
                }
            }
        }
    }

    /// Box layout whose Galerkin matrix matches the published baseline.
    pub fn galerkin_layout(self) -> GalerkinLayout {
        match self {
            ExampleId::Example1 => GalerkinLayout::UnitCells,
            ExampleId::Example2 => GalerkinLayout::GridCells,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SynthesisMode {
    /// Adaptive Gauss–Legendre quadrature of `∫ h(x_i, y) f(y) dy`.
    #[default]
    Quadrature,
    /// Closed-form `K[f]` registered on the problem.
    Analytic,
}

pub const DATA_TOLERANCE: f64 = 1e-12;

/// `g_i = ∫₀¹ h(x_i, y) f(y) dy`, split at `y = x_i` where the kernel has a kink.
pub fn integrate_kernel(kernel: &Kernel, f: &(dyn Fn(f64) -> f64 + Sync), nodes: &[f64], abs_tol: f64) -> Result<Vec<f64>> {
    let rule = GaussLegendre::new(15);
    nodes
        .par_iter()
        .map(|&x| {
            let integrand = |y: f64| kernel.eval(x, y) * f(y);
            let left = adaptive(&rule, 0.0, x, 0.5 * abs_tol, &integrand);
            let right = adaptive(&rule, x, 1.0, 0.5 * abs_tol, &integrand);
            match (left, right) {
                (Ok(l), Ok(r)) => Ok(l + r),
                (Err(estimate), _) | (_, Err(estimate)) => Err(Error::Quadrature { node: x, estimate }),
            }
        })
        .collect()
}

/// Exact data `g = K[f†]` sampled on `grid`.
pub fn synthesize_data(example: ExampleId, f: TestFunction, grid: &Grid, mode: SynthesisMode) -> Result<Vec<f64>> {
    let nodes = grid.nodes();
    let problem = example.problem();
    match mode {
        SynthesisMode::Quadrature => integrate_kernel(&problem.kernel, &f.as_fn(), &nodes, DATA_TOLERANCE),
        SynthesisMode::Analytic => {
            let u = problem.forward_oracle.get(f.name()).ok_or_else(|| {
                Error::UnsupportedProblem(format!("no closed-form image of {f} is registered for {example}"))
            })?;
            Ok(nodes.into_iter().map(|x| u(x)).collect())
        }
    }
}
