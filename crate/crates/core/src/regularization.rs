//! Generalized Tikhonov regularization: the normal-equations solver, the
//! filter-factor solver for `A = I`, and the oracle sweep over `α`.

use faer::prelude::SpSolver;
use faer::{Mat, Side};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::discretization::DiscreteOperator;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, SvdFactors};
use crate::metrics;

/// `min ‖K f − g‖² + w‖A f‖²`, with the Gram matrices precomputed.
#[derive(Debug, Clone)]
pub struct TikhonovProblem {
    pub forward: DiscreteOperator,
    pub penalty: DiscreteOperator,
    pub data: Vec<f64>,
    ktk: Matrix,
    ata: Matrix,
    ktg: Vec<f64>,
}

impl TikhonovProblem {
    /// Checks grid consistency and `ker(A) ∩ ker(K) = {0}` (smallest eigenvalue
    /// of `KᵀK + AᵀA` above `1e-14·‖KᵀK + AᵀA‖₂`).
    pub fn new(forward: DiscreteOperator, penalty: DiscreteOperator, data: Vec<f64>) -> Result<Self> {
        forward.grid.ensure_matches(&penalty.grid)?;
        if data.len() != forward.n() {
            return Err(Error::GridMismatch(format!("data has {} entries on a grid of {}", data.len(), forward.n())));
        }
        let ktk = linalg::gram(&forward.matrix);
        let ata = linalg::gram(&penalty.matrix);
        let ktg = linalg::transpose_matvec(&forward.matrix, &data);
        let sum = &ktk + &ata;
        let eig = linalg::symmetric_eigenvalues(&sum);
        let (lo, hi) = (eig[0], eig[eig.len() - 1]);
        if !(lo > 1e-14 * hi) {
            return Err(Error::IllPosed(format!(
                "ker(A) and ker(K) intersect: λ_min(KᵀK + AᵀA) = {lo:e}, λ_max = {hi:e}"
            )));
        }
        Ok(Self {
            forward,
            penalty,
            data,
            ktk,
            ata,
            ktg,
        })
    }

    pub fn n(&self) -> usize {
        self.forward.n()
    }

    /// Same operators with new data; the kernel condition is already known to hold.
    pub fn with_data(&self, data: Vec<f64>) -> Result<Self> {
        if data.len() != self.n() {
            return Err(Error::GridMismatch(format!("data has {} entries on a grid of {}", data.len(), self.n())));
        }
        let ktg = linalg::transpose_matvec(&self.forward.matrix, &data);
        Ok(Self {
            data,
            ktg,
            ..self.clone()
        })
    }
}

/// How a grid value `α` maps to the weight multiplying `‖A f‖²`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParameterConvention {
    /// weight = α
    Linear,
    /// weight = α²
    #[default]
    Squared,
}

impl ParameterConvention {
    pub fn weight(self, alpha: f64) -> f64 {
        match self {
            ParameterConvention::Linear => alpha,
            ParameterConvention::Squared => alpha * alpha,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularizedSolution {
    pub solution: Vec<f64>,
    pub alpha: f64,
    /// Weight that multiplied `‖A f‖²`.
    pub weight: f64,
    pub residual_norm: f64,
    pub penalty_norm: f64,
    pub rre: Option<f64>,
}

/// Solves `(KᵀK + α·AᵀA) f = Kᵀg`, the weight being `α` itself.
pub fn tikhonov_solve(p: &TikhonovProblem, alpha: f64) -> Result<RegularizedSolution> {
    tikhonov_solve_with(p, alpha, ParameterConvention::Linear)
}

/// Cholesky solve of the normal equations with one step of iterative
/// refinement, then a backward-error check of the gradient residual.
pub fn tikhonov_solve_with(p: &TikhonovProblem, alpha: f64, convention: ParameterConvention) -> Result<RegularizedSolution> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Parameter(format!("alpha must be positive and finite, got {alpha}")));
    }
    let weight = convention.weight(alpha);
    let n = p.n();
    let system = Mat::from_fn(n, n, |i, j| p.ktk[(i, j)] + weight * p.ata[(i, j)]);
    let chol = system
        .cholesky(Side::Lower)
        .map_err(|_| Error::IllPosed(format!("regularized system is not positive definite at weight {weight:e}")))?;
    let rhs = Mat::from_fn(n, 1, |i, _| p.ktg[i]);
    let mut f: Vec<f64> = chol.solve(&rhs).col_as_slice(0).to_vec();
    let residual = |f: &[f64]| -> Vec<f64> {
        linalg::matvec(&system, f).iter().zip(&p.ktg).map(|(a, b)| a - b).collect()
    };
    let r = residual(&f);
    let correction = chol.solve(Mat::from_fn(n, 1, |i, _| r[i]));
    for (fi, ci) in f.iter_mut().zip(correction.col_as_slice(0)) {
        *fi -= ci;
    }
    let gradient = linalg::norm2(&residual(&f));
    // normwise backward error: ‖M f − b‖ ≤ 1e-8·(‖M‖_F‖f‖ + ‖b‖)
    let bound = 1e-8 * (frobenius(&system) * linalg::norm2(&f) + linalg::norm2(&p.ktg));
    if !(gradient <= bound) {
        return Err(Error::numerical(
            "Tikhonov normal equations",
            format!("gradient residual {gradient:e} exceeds {bound:e} at weight {weight:e}"),
        ));
    }
    Ok(summarize(p, f, alpha, weight))
}

fn frobenius(a: &Matrix) -> f64 {
    (0..a.ncols()).map(|j| a.col_as_slice(j).iter().map(|v| v * v).sum::<f64>()).sum::<f64>().sqrt()
}

fn summarize(p: &TikhonovProblem, solution: Vec<f64>, alpha: f64, weight: f64) -> RegularizedSolution {
    let kf = p.forward.apply(&solution);
    let r: Vec<f64> = kf.iter().zip(&p.data).map(|(a, b)| a - b).collect();
    let af = p.penalty.apply(&solution);
    RegularizedSolution {
        residual_norm: linalg::norm2(&r),
        penalty_norm: linalg::norm2(&af),
        solution,
        alpha,
        weight,
        rre: None,
    }
}

/// Tikhonov filter factor `F(s) = s²/(s² + w)`.
pub fn filter_factor(s: f64, weight: f64) -> f64 {
    s * s / (s * s + weight)
}

/// `f = Σ_i F(s_i)/s_i·⟨g, u_i⟩·v_i`, the `A = I` solution with weight `w`.
pub fn filter_solution(svd: &SvdFactors, g: &[f64], weight: f64) -> Vec<f64> {
    let n = svd.v.nrows();
    let mut f = vec![0.0; n];
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s == 0.0 {
            continue;
        }
        let c = filter_factor(s, weight) / s * linalg::dot(svd.u.col_as_slice(k), g);
        for (fi, vi) in f.iter_mut().zip(svd.v.col_as_slice(k)) {
            *fi += c * vi;
        }
    }
    f
}

/// Logarithmically spaced `α` values from `max` down to `min`, both included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaGrid {
    pub max: f64,
    pub min: f64,
    pub count: usize,
}

impl Default for AlphaGrid {
    fn default() -> Self {
        Self {
            max: 1e3,
            min: 1e-6,
            count: 50,
        }
    }
}

impl AlphaGrid {
    pub fn validate(&self) -> Result<()> {
        if !(self.min > 0.0 && self.max > self.min && self.max.is_finite()) {
            return Err(Error::Parameter(format!(
                "alpha grid needs max > min > 0, got max = {}, min = {}",
                self.max, self.min
            )));
        }
        if self.count < 2 {
            return Err(Error::Parameter(format!("alpha grid needs at least 2 points, got {}", self.count)));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let (hi, lo) = (self.max.log10(), self.min.log10());
        let last = self.count - 1;
        (0..self.count)
            .map(|k| match k {
                0 => self.max,
                k if k == last => self.min,
                k => 10f64.powf(hi + (lo - hi) * k as f64 / last as f64),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub best: RegularizedSolution,
    /// `(α, RRE)` in grid order.
    pub curve: Vec<(f64, f64)>,
}

/// Solves at every grid point and keeps the minimizer of the RRE against
/// `reference`; ties go to the smaller `α`.
pub fn alpha_sweep(
    p: &TikhonovProblem,
    grid: &AlphaGrid,
    reference: &[f64],
    convention: ParameterConvention,
) -> Result<SweepResult> {
    grid.validate()?;
    if reference.len() != p.n() {
        return Err(Error::GridMismatch(format!("reference has {} entries on a grid of {}", reference.len(), p.n())));
    }
    let solutions = grid
        .points()
        .into_par_iter()
        .map(|alpha| {
            let mut s = tikhonov_solve_with(p, alpha, convention).map_err(|e| Error::Sweep {
                alpha,
                source: Box::new(e),
            })?;
            s.rre = Some(metrics::rre(&s.solution, reference)?);
            Ok(s)
        })
        .collect::<Result<Vec<_>>>()?;
    let curve: Vec<(f64, f64)> = solutions.iter().map(|s| (s.alpha, s.rre.expect("set above"))).collect();
    let best = solutions
        .into_iter()
        .reduce(|a, b| {
            let (ra, rb) = (a.rre.expect("set"), b.rre.expect("set"));
            if rb < ra || (rb == ra && b.alpha < a.alpha) {
                b
            } else {
                a
            }
        })
        .expect("grid has at least two points");
    Ok(SweepResult { best, curve })
}
