//! Penalty operators for generalized Tikhonov regularization: the identity,
//! discrete Laplacians with Dirichlet and Neumann conditions, the similarity
//! graph Laplacian built from the observed data, and its kernel-matched variant.

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::discretization::{DiscreteOperator, Grid, OperatorKind};
use crate::error::{Error, Result};
use crate::graph::{laplacian_matrix, Graph};
use crate::linalg::{self, Matrix};

/// How data values enter the similarity weights.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleScaling {
    /// Raw point values `g_i`.
    PointValues,
    /// Box-basis coefficients `g_i/√n`.
    #[default]
    BoxCoefficients,
}

impl SampleScaling {
    fn factor(self, n: usize) -> f64 {
        match self {
            SampleScaling::PointValues => 1.0,
            SampleScaling::BoxCoefficients => 1.0 / (n as f64).sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityParams {
    /// Neighbourhood radius `r`: nodes with `0 < |i − j| ≤ r` are linked.
    pub radius: usize,
    /// Gaussian width `σ`.
    pub sigma: f64,
    #[serde(default)]
    pub scaling: SampleScaling,
}

impl SimilarityParams {
    /// `r = ⌈fraction·n⌉`.
    pub fn from_fraction(n: usize, fraction: f64, sigma: f64, scaling: SampleScaling) -> Result<Self> {
        if !(fraction > 0.0 && fraction <= 1.0) {
            return Err(Error::Parameter(format!("radius fraction must lie in (0, 1], got {fraction}")));
        }
        let raw = fraction * n as f64;
        // 0.2·n can land a few ulps above an integer
        let radius = if (raw - raw.round()).abs() < 1e-9 { raw.round() } else { raw.ceil() } as usize;
        let p = Self {
            radius: radius.max(1),
            sigma,
            scaling,
        };
        p.validate(n)?;
        Ok(p)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.radius == 0 || self.radius > n {
            return Err(Error::Parameter(format!("radius must lie in 1..={n}, got {}", self.radius)));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::Parameter(format!("sigma must be positive, got {}", self.sigma)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PenaltyKind {
    #[serde(alias = "i")]
    Identity,
    #[serde(rename = "a1", alias = "dirichlet")]
    Dirichlet,
    #[serde(rename = "a2", alias = "neumann")]
    Neumann,
    #[serde(rename = "a3", alias = "data_graph")]
    DataGraph,
    #[serde(rename = "matched", alias = "kernel_matched")]
    KernelMatched,
}

impl PenaltyKind {
    pub const TABLE_COLUMNS: [PenaltyKind; 4] =
        [PenaltyKind::Identity, PenaltyKind::Dirichlet, PenaltyKind::Neumann, PenaltyKind::DataGraph];

    pub fn label(self) -> &'static str {
        match self {
            PenaltyKind::Identity => "I",
            PenaltyKind::Dirichlet => "A1",
            PenaltyKind::Neumann => "A2",
            PenaltyKind::DataGraph => "A3",
            PenaltyKind::KernelMatched => "A3+kappa",
        }
    }

    pub fn needs_data(self) -> bool {
        matches!(self, PenaltyKind::DataGraph | PenaltyKind::KernelMatched)
    }
}

impl std::str::FromStr for PenaltyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "identity" | "i" => Ok(PenaltyKind::Identity),
            "a1" | "dirichlet" => Ok(PenaltyKind::Dirichlet),
            "a2" | "neumann" => Ok(PenaltyKind::Neumann),
            "a3" | "data_graph" => Ok(PenaltyKind::DataGraph),
            "matched" | "kernel_matched" => Ok(PenaltyKind::KernelMatched),
            other => Err(Error::Config(format!("unknown penalty '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PenaltySpec {
    pub kind: PenaltyKind,
    pub params: Option<SimilarityParams>,
    /// Known solution samples that the kernel-matched penalty annihilates.
    pub anchor: Option<Vec<f64>>,
}

impl PenaltySpec {
    pub fn simple(kind: PenaltyKind) -> Self {
        Self {
            kind,
            params: None,
            anchor: None,
        }
    }
}

fn tridiagonal(n: usize, corner: f64) -> Matrix {
    Mat::from_fn(n, n, |i, j| {
        if i == j {
            if i == 0 || i == n - 1 {
                corner
            } else {
                2.0
            }
        } else if i.abs_diff(j) == 1 {
            -1.0
        } else {
            0.0
        }
    })
}

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Parameter(format!("penalty size must be at least 2, got {n}")));
    }
    Ok(())
}

/// `A₁ = tridiag(−1, 2, −1)`
pub fn dirichlet_penalty(n: usize) -> Result<DiscreteOperator> {
    check_size(n)?;
    DiscreteOperator::new(tridiagonal(n, 2.0), Grid::interior(n), OperatorKind::Penalty)
}

/// `A₂`: as `A₁` with both corner diagonal entries set to 1.
pub fn neumann_penalty(n: usize) -> Result<DiscreteOperator> {
    check_size(n)?;
    DiscreteOperator::new(tridiagonal(n, 1.0), Grid::interior(n), OperatorKind::Penalty)
}

pub fn identity_penalty(n: usize) -> Result<DiscreteOperator> {
    DiscreteOperator::new(linalg::identity(n), Grid::interior(n), OperatorKind::Penalty)
}

/// Similarity graph on the data: `w_ij = exp(−(g̃_i − g̃_j)²/σ²)` for
/// `0 < |i − j| ≤ r`, where `g̃` is the data in the chosen scaling.
pub fn similarity_weights(data: &[f64], p: &SimilarityParams) -> Result<Graph> {
    let n = data.len();
    p.validate(n)?;
    let s = p.scaling.factor(n);
    let g: Vec<f64> = data.iter().map(|v| v * s).collect();
    let inv_sigma2 = 1.0 / (p.sigma * p.sigma);
    let edges = (0..n).flat_map(|i| {
        let g = &g;
        ((i + 1)..n.min(i + p.radius + 1)).map(move |j| (i, j, (-(g[i] - g[j]).powi(2) * inv_sigma2).exp()))
    });
    let nodes = Grid::interior(n).nodes();
    Graph::from_edges(nodes, edges.collect::<Vec<_>>(), None)
}

/// `A₃ = D − W` for the similarity graph of the data.
pub fn data_graph_laplacian(data: &[f64], p: &SimilarityParams) -> Result<DiscreteOperator> {
    let g = similarity_weights(data, p)?;
    DiscreteOperator::new(laplacian_matrix(&g), Grid::interior(data.len()), OperatorKind::Penalty)
}

/// `Δ + diag(κ)` with `κ_i = −(Δ·anchor)_i/anchor_i`, so that the result
/// annihilates `anchor`.
pub fn kernel_matched_penalty(delta: &DiscreteOperator, anchor: &[f64]) -> Result<DiscreteOperator> {
    if anchor.len() != delta.n() {
        return Err(Error::GridMismatch(format!(
            "anchor has {} entries for a size-{} operator",
            anchor.len(),
            delta.n()
        )));
    }
    if let Some(index) = anchor.iter().position(|&v| v == 0.0) {
        return Err(Error::DegenerateAnchor { index });
    }
    let image = delta.apply(anchor);
    let mut matrix = delta.matrix.clone();
    for i in 0..anchor.len() {
        matrix[(i, i)] -= image[i] / anchor[i];
    }
    DiscreteOperator::new(matrix, delta.grid, OperatorKind::Penalty)
}

/// Builds the penalty named by `spec` on `grid`. `data` feeds the similarity
/// weights of the data-driven kinds.
pub fn build_penalty(spec: &PenaltySpec, grid: Grid, data: Option<&[f64]>) -> Result<DiscreteOperator> {
    let n = grid.n;
    let op = match spec.kind {
        PenaltyKind::Identity => identity_penalty(n)?,
        PenaltyKind::Dirichlet => dirichlet_penalty(n)?,
        PenaltyKind::Neumann => neumann_penalty(n)?,
        PenaltyKind::DataGraph | PenaltyKind::KernelMatched => {
            let params = spec
                .params
                .ok_or_else(|| Error::Parameter(format!("{} penalty needs similarity parameters", spec.kind.label())))?;
            let data = data.ok_or_else(|| Error::Parameter("data-driven penalty needs a data vector".into()))?;
            if data.len() != n {
                return Err(Error::GridMismatch(format!("data has {} entries on a grid of {n}", data.len())));
            }
            let delta = data_graph_laplacian(data, &params)?;
            if spec.kind == PenaltyKind::KernelMatched {
                let anchor = spec
                    .anchor
                    .as_deref()
                    .ok_or_else(|| Error::Parameter("kernel-matched penalty needs an anchor vector".into()))?;
                kernel_matched_penalty(&delta, anchor)?
            } else {
                delta
            }
        }
    };
    op.on_grid(grid)
}
