//! Experiment configuration, as read from JSON and overridden by CLI flags.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::discretization::{GalerkinLayout, StiffnessScaling, DEFAULT_QUAD_POINTS};
use crate::error::{Error, Result};
use crate::harness::problems::{ExampleId, SynthesisMode, TestFunction};
use crate::penalty::{PenaltyKind, SampleScaling, SimilarityParams};
use crate::regularization::{AlphaGrid, ParameterConvention};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForwardMethod {
    Graph,
    Galerkin,
}

impl ForwardMethod {
    pub const BOTH: [ForwardMethod; 2] = [ForwardMethod::Graph, ForwardMethod::Galerkin];

    pub fn label(self) -> &'static str {
        match self {
            ForwardMethod::Graph => "graph",
            ForwardMethod::Galerkin => "galerkin",
        }
    }
}

impl std::str::FromStr for ForwardMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph" => Ok(ForwardMethod::Graph),
            "galerkin" => Ok(ForwardMethod::Galerkin),
            other => Err(Error::Config(format!("unknown method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub example: ExampleId,
    pub test_function: TestFunction,
    pub n: usize,
    pub epsilon: f64,
    pub seeds: Vec<u64>,
    pub method: ForwardMethod,
    pub penalty: PenaltyKind,
    pub alpha_grid: AlphaGrid,
    pub r_fraction: f64,
    pub sigma: f64,
    pub synthesis: SynthesisMode,
    pub alpha_convention: ParameterConvention,
    pub stiffness_scaling: StiffnessScaling,
    pub sample_scaling: SampleScaling,
    /// `None` picks the example's own layout.
    pub galerkin_layout: Option<GalerkinLayout>,
    pub quad_points: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            example: ExampleId::Example1,
            test_function: TestFunction::F4,
            n: 100,
            epsilon: 0.01,
            seeds: vec![0],
            method: ForwardMethod::Graph,
            penalty: PenaltyKind::DataGraph,
            alpha_grid: AlphaGrid::default(),
            r_fraction: 0.2,
            sigma: 0.01,
            synthesis: SynthesisMode::Quadrature,
            alpha_convention: ParameterConvention::Squared,
            stiffness_scaling: StiffnessScaling::GridSpacing,
            sample_scaling: SampleScaling::BoxCoefficients,
            galerkin_layout: None,
            quad_points: DEFAULT_QUAD_POINTS,
        }
    }
}

pub const MAX_N: usize = 4000;

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.n < 2 || self.n > MAX_N {
            return bad(format!("n must lie in 2..={MAX_N}, got {}", self.n));
        }
        if !(self.epsilon >= 0.0 && self.epsilon < 1.0) {
            return bad(format!("epsilon must lie in [0, 1), got {}", self.epsilon));
        }
        if self.seeds.is_empty() {
            return bad("at least one seed is required".into());
        }
        if !(self.r_fraction > 0.0 && self.r_fraction <= 1.0) {
            return bad(format!("r_fraction must lie in (0, 1], got {}", self.r_fraction));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return bad(format!("sigma must be positive, got {}", self.sigma));
        }
        if self.quad_points < 4 || self.quad_points > 64 {
            return bad(format!("quad_points must lie in 4..=64, got {}", self.quad_points));
        }
        self.alpha_grid.validate().map_err(|e| Error::Config(e.to_string()))
    }

    pub fn similarity(&self) -> Result<SimilarityParams> {
        SimilarityParams::from_fraction(self.n, self.r_fraction, self.sigma, self.sample_scaling)
    }

    pub fn layout(&self) -> GalerkinLayout {
        self.galerkin_layout.unwrap_or_else(|| self.example.galerkin_layout())
    }

    pub fn hash(&self) -> String {
        hash_json(&serde_json::to_value(self).expect("config serializes"))
    }
}

/// SHA-256 of the compact JSON text, in hex.
pub fn hash_json(value: &serde_json::Value) -> String {
    let text = serde_json::to_string(value).expect("value serializes");
    format!("{:x}", Sha256::digest(text.as_bytes()))
}
