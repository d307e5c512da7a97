//! Thin helpers over `faer` dense matrices.

use faer::{Mat, Side};

use crate::error::{Error, Result};

/// Dense column-major real matrix used throughout the crate.
pub type Matrix = Mat<f64>;

pub fn identity(n: usize) -> Matrix {
    Mat::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
}

pub fn diagonal(values: &[f64]) -> Matrix {
    let n = values.len();
    Mat::from_fn(n, n, |i, j| if i == j { values[i] } else { 0.0 })
}

/// Symmetric Toeplitz matrix whose first row is `first_row`.
pub fn symmetric_toeplitz(first_row: &[f64]) -> Matrix {
    let n = first_row.len();
    Mat::from_fn(n, n, |i, j| first_row[i.abs_diff(j)])
}

pub fn matvec(a: &Matrix, x: &[f64]) -> Vec<f64> {
    assert_eq!(a.ncols(), x.len(), "matvec dimension mismatch");
    let mut y = vec![0.0; a.nrows()];
    for (j, &xj) in x.iter().enumerate() {
        if xj == 0.0 {
            continue;
        }
        for (yi, &aij) in y.iter_mut().zip(a.col_as_slice(j)) {
            *yi += aij * xj;
        }
    }
    y
}

/// `aᵀ x`
pub fn transpose_matvec(a: &Matrix, x: &[f64]) -> Vec<f64> {
    assert_eq!(a.nrows(), x.len(), "matvec dimension mismatch");
    (0..a.ncols()).map(|j| dot(a.col_as_slice(j), x)).collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(x: &[f64]) -> f64 {
    // scaled to avoid overflow on huge entries
    let scale = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    scale * x.iter().map(|v| (v / scale).powi(2)).sum::<f64>().sqrt()
}

pub fn gram(a: &Matrix) -> Matrix {
    a.transpose() * a
}

pub fn max_abs(a: &Matrix) -> f64 {
    let mut m = 0.0_f64;
    for j in 0..a.ncols() {
        for &v in a.col_as_slice(j) {
            m = m.max(v.abs());
        }
    }
    m
}

pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
    let mut m = 0.0_f64;
    for j in 0..a.ncols() {
        for (x, y) in a.col_as_slice(j).iter().zip(b.col_as_slice(j)) {
            m = m.max((x - y).abs());
        }
    }
    m
}

/// Largest `|a_ij - a_ji|`.
pub fn max_asymmetry(a: &Matrix) -> f64 {
    let n = a.nrows().min(a.ncols());
    let mut m = 0.0_f64;
    for j in 0..n {
        for i in (j + 1)..n {
            m = m.max((a[(i, j)] - a[(j, i)]).abs());
        }
    }
    m
}

pub fn all_finite(a: &Matrix) -> bool {
    (0..a.ncols()).all(|j| a.col_as_slice(j).iter().all(|v| v.is_finite()))
}

pub fn row_sums(a: &Matrix) -> Vec<f64> {
    let ones = vec![1.0; a.ncols()];
    matvec(a, &ones)
}

/// Eigenvalues of a symmetric matrix in ascending order (lower triangle is read).
pub fn symmetric_eigenvalues(a: &Matrix) -> Vec<f64> {
    let mut values = a.selfadjoint_eigenvalues(Side::Lower);
    values.sort_by(|x, y| x.total_cmp(y));
    values
}

/// Full symmetric eigendecomposition, eigenvalues ascending with matching columns.
pub fn symmetric_eigen(a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    let evd = a.selfadjoint_eigendecomposition(Side::Lower);
    let s = evd.s().column_vector();
    let u = evd.u();
    let n = a.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s.read(i).total_cmp(&s.read(j)));
    let values: Vec<f64> = order.iter().map(|&k| s.read(k)).collect();
    let vectors = Mat::from_fn(n, n, |i, j| u.read(i, order[j]));
    if values.iter().any(|v| !v.is_finite()) || !all_finite(&vectors) {
        return Err(Error::numerical("symmetric eigendecomposition", "non-finite output"));
    }
    Ok((values, vectors))
}

/// Singular value decomposition `a = U diag(s) Vᵀ`.
#[derive(Debug, Clone)]
pub struct SvdFactors {
    pub u: Matrix,
    pub singular_values: Vec<f64>,
    pub v: Matrix,
}

impl SvdFactors {
    pub fn of(a: &Matrix) -> Result<Self> {
        let svd = a.svd();
        let s = svd.s_diagonal();
        let singular_values: Vec<f64> = (0..s.nrows()).map(|i| s.read(i)).collect();
        let u = svd.u().to_owned();
        let v = svd.v().to_owned();
        if singular_values.iter().any(|v| !v.is_finite()) || !all_finite(&u) || !all_finite(&v) {
            return Err(Error::numerical("singular value decomposition", "non-finite output"));
        }
        Ok(Self {
            u,
            singular_values,
            v,
        })
    }

    pub fn max_singular_value(&self) -> f64 {
        self.singular_values.iter().fold(0.0_f64, |m, &s| m.max(s))
    }
}
