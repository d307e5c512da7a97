//! Discretizations of a compact Green operator: the graph-based `K⁽ⁿ⁾`, the
//! Galerkin box-function baseline `K̂⁽ⁿ⁾`, and the spectral plumbing used to
//! compare both against the continuous operator.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use faer::Mat;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{transformed_path_laplacian, IntegerLine, PathTransform, Truncation};
use crate::linalg::{self, Matrix, SvdFactors};
use crate::quadrature::GaussLegendre;

/// Shared real function of one variable.
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Shared real function of two variables.
pub type RealFn2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// First row of the symmetric Toeplitz matrix generated by `θ²` on `[0, π]`:
/// `t₀ = π²/3`, `t_k = (−1)^k·2/k²`.
pub fn toeplitz_stencil(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| match k {
            0 => PI * PI / 3.0,
            _ => {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * 2.0 / (k as f64).powi(2)
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridConvention {
    /// `x_i = i/(n+1)`, `i = 1..n`
    Interior,
    /// `x_i = (i − 1/2)/n`, `i = 1..n`
    Midpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grid {
    pub n: usize,
    pub convention: GridConvention,
}

impl Grid {
    pub fn interior(n: usize) -> Self {
        Self {
            n,
            convention: GridConvention::Interior,
        }
    }

    pub fn midpoint(n: usize) -> Self {
        Self {
            n,
            convention: GridConvention::Midpoint,
        }
    }

    pub fn node(&self, i: usize) -> f64 {
        let n = self.n as f64;
        match self.convention {
            GridConvention::Interior => (i as f64 + 1.0) / (n + 1.0),
            GridConvention::Midpoint => (i as f64 + 0.5) / n,
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.node(i)).collect()
    }

    /// Errors unless both grids are identical.
    pub fn ensure_matches(&self, other: &Grid) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!("{self:?} vs {other:?}")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    Graph,
    Galerkin,
    Penalty,
    Derived,
}

/// A dense `n × n` matrix bound to the grid its vectors live on.
#[derive(Debug, Clone)]
pub struct DiscreteOperator {
    pub matrix: Matrix,
    pub grid: Grid,
    pub kind: OperatorKind,
}

impl DiscreteOperator {
    pub fn new(matrix: Matrix, grid: Grid, kind: OperatorKind) -> Result<Self> {
        if matrix.nrows() != grid.n || matrix.ncols() != grid.n {
            return Err(Error::GridMismatch(format!(
                "{}x{} matrix on a grid of {} nodes",
                matrix.nrows(),
                matrix.ncols(),
                grid.n
            )));
        }
        Ok(Self { matrix, grid, kind })
    }

    pub fn n(&self) -> usize {
        self.grid.n
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        linalg::matvec(&self.matrix, x)
    }

    /// Same matrix, rebound to another grid of the same size.
    pub fn on_grid(mut self, grid: Grid) -> Result<Self> {
        if grid.n != self.grid.n {
            return Err(Error::GridMismatch(format!("cannot move a size-{} operator to {grid:?}", self.grid.n)));
        }
        self.grid = grid;
        Ok(self)
    }
}

/// `h(x, y) = upper(max(x, y))·lower(min(x, y))`, the form of every Green
/// kernel of a two-point boundary problem.
#[derive(Clone)]
pub struct SemiSeparable {
    pub upper: RealFn,
    pub lower: RealFn,
}

/// Integral kernel, optionally carrying its semi-separable factors.
#[derive(Clone)]
pub struct Kernel {
    eval: RealFn2,
    factors: Option<SemiSeparable>,
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Kernel")
            .field("semi_separable", &self.factors.is_some())
            .finish()
    }
}

impl Kernel {
    pub fn new(h: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(h),
            factors: None,
        }
    }

    pub fn semi_separable(
        upper: impl Fn(f64) -> f64 + Send + Sync + 'static,
        lower: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        let upper: RealFn = Arc::new(upper);
        let lower: RealFn = Arc::new(lower);
        let (u, l) = (upper.clone(), lower.clone());
        Self {
            eval: Arc::new(move |x, y| if y < x { u(x) * l(y) } else { u(y) * l(x) }),
            factors: Some(SemiSeparable { upper, lower }),
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.eval)(x, y)
    }

    pub fn factors(&self) -> Option<&SemiSeparable> {
        self.factors.as_ref()
    }

    /// Same kernel with the factorization dropped, forcing generic quadrature.
    pub fn without_factors(&self) -> Self {
        Self {
            eval: self.eval.clone(),
            factors: None,
        }
    }

    /// Largest `|h(x,y) − h(y,x)|` over a `samples × samples` grid in `(0,1)²`.
    pub fn asymmetry(&self, samples: usize) -> f64 {
        let pts: Vec<f64> = (1..=samples).map(|i| i as f64 / (samples + 1) as f64).collect();
        let mut worst = 0.0_f64;
        for &x in &pts {
            for &y in &pts {
                worst = worst.max((self.eval(x, y) - self.eval(y, x)).abs());
            }
        }
        worst
    }
}

/// Closed-form spectra available for the problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectrumLaw {
    /// `q ≡ c` with Dirichlet conditions: `δ_m = m²π² + c`.
    ConstantPotential(f64),
}

/// The continuous problem `K = orientation·L†` with `L = −d²/dx² + q` on
/// `(0, 1)` and Dirichlet boundary conditions.
#[derive(Clone)]
pub struct ContinuousProblem {
    pub kernel: Kernel,
    pub potential: RealFn,
    /// `+1` when `h` is the Green function of `L`, `−1` when it is sign-flipped.
    pub orientation: f64,
    pub spectrum: Option<SpectrumLaw>,
    /// Analytic images `K[f]`, keyed by the name of `f`.
    pub forward_oracle: BTreeMap<String, RealFn>,
}

impl fmt::Debug for ContinuousProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ContinuousProblem")
            .field("kernel", &self.kernel)
            .field("orientation", &self.orientation)
            .field("spectrum", &self.spectrum)
            .field("forward_oracle", &self.forward_oracle.keys().collect::<Vec<_>>())
            .finish()
    }
}

impl ContinuousProblem {
    /// `δ_m`, eigenvalues of `L` in increasing order.
    pub fn differential_eigenvalue(&self, m: usize) -> Option<f64> {
        match self.spectrum? {
            SpectrumLaw::ConstantPotential(c) => Some((m as f64 * PI).powi(2) + c),
        }
    }

    /// `λ_m = orientation/δ_m`.
    pub fn integral_eigenvalue(&self, m: usize) -> Option<f64> {
        self.differential_eigenvalue(m).map(|d| self.orientation / d)
    }
}

/// `[λ_1, …, λ_count]` of `K`, in Weyl order (decreasing `|λ|`).
pub fn continuous_eigenvalues(p: &ContinuousProblem, count: usize) -> Result<Vec<f64>> {
    if p.spectrum.is_none() {
        return Err(Error::UnsupportedProblem(
            "no closed-form eigenvalue law is registered for this problem".into(),
        ));
    }
    Ok((1..=count).map(|m| p.integral_eigenvalue(m).expect("law present")).collect())
}

/// Factor multiplying the stencil matrix in `L⁽ⁿ⁾`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StiffnessScaling {
    /// `(n+1)² = 1/h²` for the grid spacing `h` of the interior grid.
    #[default]
    GridSpacing,
    /// `n²`
    Dimension,
}

impl StiffnessScaling {
    pub fn factor(self, n: usize) -> f64 {
        match self {
            StiffnessScaling::GridSpacing => ((n + 1) as f64).powi(2),
            StiffnessScaling::Dimension => (n as f64).powi(2),
        }
    }
}

/// `L⁽ⁿ⁾ = s·T + diag(q(x_i))` on the interior grid, where `T` is the
/// analytic transformed-path Laplacian of the integer line. `T` is the
/// symmetric Toeplitz matrix of [`toeplitz_stencil`].
pub fn build_schrodinger_operator(
    q: &dyn Fn(f64) -> f64,
    n: usize,
    scaling: StiffnessScaling,
) -> Result<DiscreteOperator> {
    if n == 0 {
        return Err(Error::Parameter("grid size n must be positive".into()));
    }
    let grid = Grid::interior(n);
    let potential: Vec<f64> = grid.nodes().into_iter().map(q).collect();
    if let Some(i) = potential.iter().position(|v| !v.is_finite()) {
        return Err(Error::Evaluation(format!("potential is not finite at x = {}", grid.node(i))));
    }
    let delta = transformed_path_laplacian(&IntegerLine::new(n), &PathTransform::squared_symbol(), Truncation::Analytic)?;
    let s = scaling.factor(n);
    let matrix = Mat::from_fn(n, n, |i, j| {
        let v = s * delta[(i, j)];
        if i == j {
            v + potential[i]
        } else {
            v
        }
    });
    DiscreteOperator::new(matrix, grid, OperatorKind::Graph)
}

/// Moore–Penrose pseudoinverse through the SVD; singular values at or below
/// `rel_tol·σ_max` are treated as zero.
pub fn pseudo_inverse(op: &DiscreteOperator, rel_tol: f64) -> Result<DiscreteOperator> {
    let svd = SvdFactors::of(&op.matrix).map_err(|e| match e {
        Error::Numerical { detail, .. } => {
            Error::numerical(format!("pseudoinverse of a {:?} operator (n = {})", op.kind, op.n()), detail)
        }
        other => other,
    })?;
    let cutoff = rel_tol * svd.max_singular_value();
    let n = op.n();
    let inv_s: Vec<f64> = svd
        .singular_values
        .iter()
        .map(|&s| if s > cutoff { 1.0 / s } else { 0.0 })
        .collect();
    // V Σ† Uᵀ
    let v_scaled = Mat::from_fn(n, svd.v.ncols(), |i, k| svd.v[(i, k)] * inv_s[k]);
    let matrix = v_scaled * svd.u.transpose();
    DiscreteOperator::new(matrix, op.grid, OperatorKind::Derived)
}

pub const DEFAULT_PINV_TOL: f64 = 1e-12;

/// `K⁽ⁿ⁾ = orientation·(L⁽ⁿ⁾)†`.
pub fn graph_forward_operator(p: &ContinuousProblem, n: usize, scaling: StiffnessScaling) -> Result<DiscreteOperator> {
    let l = build_schrodinger_operator(p.potential.as_ref(), n, scaling)?;
    let mut k = pseudo_inverse(&l, DEFAULT_PINV_TOL)?;
    if p.orientation != 1.0 {
        k.matrix *= faer::scale(p.orientation);
    }
    k.kind = OperatorKind::Graph;
    Ok(k)
}

/// Cell layout of the box-function basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GalerkinLayout {
    /// Cells `((i−1)/n, i/n)` tiling `(0, 1)`.
    UnitCells,
    /// Cells `((i−1)/(n+1), i/(n+1))`, whose right edges are the interior nodes.
    GridCells,
}

impl GalerkinLayout {
    /// Cell `i` (0-based) as `(a, b)`.
    pub fn cell(self, n: usize, i: usize) -> (f64, f64) {
        let d = match self {
            GalerkinLayout::UnitCells => n as f64,
            GalerkinLayout::GridCells => (n + 1) as f64,
        };
        (i as f64 / d, (i + 1) as f64 / d)
    }
}

/// Galerkin matrix `K̂_ij = n·∫∫_{cell_i × cell_j} h(x, y) dy dx` for the
/// orthonormal box basis `√n·1_{cell_i}`, by tensor Gauss–Legendre quadrature
/// with diagonal cells split at `x = y`. Vectors are indexed by the interior grid.
pub fn build_galerkin_operator(
    p: &ContinuousProblem,
    n: usize,
    layout: GalerkinLayout,
    quad_points: usize,
) -> Result<DiscreteOperator> {
    if n == 0 {
        return Err(Error::Parameter("grid size n must be positive".into()));
    }
    if quad_points < 4 {
        return Err(Error::Parameter(format!("quad_points must be at least 4, got {quad_points}")));
    }
    let rule = GaussLegendre::new(quad_points);
    let cells: Vec<(f64, f64)> = (0..n).map(|i| layout.cell(n, i)).collect();
    let scale = n as f64;
    let matrix = match p.kernel.factors() {
        Some(f) => galerkin_semi_separable(f, &cells, &rule, scale),
        None => galerkin_generic(&p.kernel, &cells, &rule, scale),
    };
    if !linalg::all_finite(&matrix) {
        return Err(Error::Evaluation("Galerkin quadrature produced a non-finite entry".into()));
    }
    DiscreteOperator::new(matrix, Grid::interior(n), OperatorKind::Galerkin)
}

pub const DEFAULT_QUAD_POINTS: usize = 8;

fn diagonal_cell(h: &dyn Fn(f64, f64) -> f64, (a, b): (f64, f64), rule: &GaussLegendre) -> f64 {
    // the triangles y < x and y > x of a symmetric kernel carry equal mass
    let lower: f64 = rule.mapped(a, b).map(|(x, wx)| wx * rule.integrate(a, x, |y| h(x, y))).sum();
    let upper: f64 = rule.mapped(a, b).map(|(x, wx)| wx * rule.integrate(x, b, |y| h(x, y))).sum();
    lower + upper
}

fn galerkin_semi_separable(f: &SemiSeparable, cells: &[(f64, f64)], rule: &GaussLegendre, scale: f64) -> Matrix {
    let n = cells.len();
    let upper: Vec<f64> = cells.iter().map(|&(a, b)| rule.integrate(a, b, |x| (f.upper)(x))).collect();
    let lower: Vec<f64> = cells.iter().map(|&(a, b)| rule.integrate(a, b, |x| (f.lower)(x))).collect();
    let h = |x: f64, y: f64| if y < x { (f.upper)(x) * (f.lower)(y) } else { (f.upper)(y) * (f.lower)(x) };
    let diag: Vec<f64> = cells.iter().map(|&c| diagonal_cell(&h, c, rule)).collect();
    Mat::from_fn(n, n, |i, j| {
        scale
            * match i.cmp(&j) {
                std::cmp::Ordering::Greater => upper[i] * lower[j],
                std::cmp::Ordering::Less => upper[j] * lower[i],
                std::cmp::Ordering::Equal => diag[i],
            }
    })
}

fn galerkin_generic(kernel: &Kernel, cells: &[(f64, f64)], rule: &GaussLegendre, scale: f64) -> Matrix {
    let n = cells.len();
    let h = |x: f64, y: f64| kernel.eval(x, y);
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        diagonal_cell(&h, cells[i], rule)
                    } else {
                        let (a, b) = cells[i];
                        let (c, d) = cells[j];
                        rule.mapped(a, b).map(|(x, wx)| wx * rule.integrate(c, d, |y| h(x, y))).sum()
                    }
                })
                .collect()
        })
        .collect();
    Mat::from_fn(n, n, |i, j| scale * rows[i][j])
}

/// Vector representing `f` on `grid`: point samples on the interior grid,
/// box-basis coefficients `f(x_i)/√n` on the midpoint grid.
pub fn project_function(f: &dyn Fn(f64) -> f64, grid: &Grid) -> Vec<f64> {
    let scale = coefficient_scale(grid);
    grid.nodes().into_iter().map(|x| f(x) * scale).collect()
}

/// Inverse of [`project_function`]: point values at the grid nodes.
pub fn reconstruct(coefficients: &[f64], grid: &Grid) -> Vec<f64> {
    let scale = coefficient_scale(grid);
    coefficients.iter().map(|c| c / scale).collect()
}

fn coefficient_scale(grid: &Grid) -> f64 {
    match grid.convention {
        GridConvention::Interior => 1.0,
        GridConvention::Midpoint => 1.0 / (grid.n as f64).sqrt(),
    }
}

/// Eigenpairs of a symmetric operator, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
    /// `max_k ‖A v_k − λ_k v_k‖₂`
    pub residual: f64,
}

/// Full eigendecomposition with residual and orthonormality contracts checked.
pub fn symmetric_eigendecomposition(op: &DiscreteOperator) -> Result<SpectralDecomposition> {
    let a = &op.matrix;
    let scale = linalg::max_abs(a);
    let asym = linalg::max_asymmetry(a);
    if asym > 1e-12 * scale.max(1.0) {
        return Err(Error::Contract(format!("operator is not symmetric (max asymmetry {asym:e})")));
    }
    let (eigenvalues, eigenvectors) = linalg::symmetric_eigen(a)?;
    let n = a.nrows();
    let av = a * &eigenvectors;
    let residual = (0..n)
        .map(|k| {
            let r: Vec<f64> = (0..n).map(|i| av[(i, k)] - eigenvalues[k] * eigenvectors[(i, k)]).collect();
            linalg::norm2(&r)
        })
        .fold(0.0_f64, f64::max);
    if residual > 1e-8 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Contract(format!("eigen residual {residual:e} exceeds 1e-8·‖A‖max = {:e}", 1e-8 * scale)));
    }
    let defect = linalg::max_abs_diff(&linalg::gram(&eigenvectors), &linalg::identity(n));
    if defect > 1e-10 {
        return Err(Error::Contract(format!("eigenvectors are not orthonormal (defect {defect:e})")));
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        residual,
    })
}

/// Eigenvalues of a symmetric operator sorted by decreasing magnitude, the
/// natural order for a compact operator (and increasing `δ` for its inverse).
pub fn weyl_spectrum(op: &DiscreteOperator) -> Vec<f64> {
    weyl_order(linalg::symmetric_eigenvalues(&op.matrix))
}

pub fn weyl_order(mut values: Vec<f64>) -> Vec<f64> {
    values.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    values
}
