//! Gauss–Legendre rules and an adaptive bisection integrator.

use std::f64::consts::PI;

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on the Legendre polynomial, started from the
    /// Chebyshev-like guess `cos(π(i - 1/4)/(n + 1/2))`.
    pub fn new(points: usize) -> Self {
        assert!(points >= 1, "a Gauss rule needs at least one node");
        let n = points;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Adaptive integration by recursive bisection. Each panel compares a single
/// rule application against the sum over its two halves; panels are accepted
/// when the difference falls below their share of `abs_tol`.
///
/// Returns `Err(estimate)` when the depth limit is reached before convergence.
pub fn adaptive(
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    abs_tol: f64,
    f: &dyn Fn(f64) -> f64,
) -> Result<f64, f64> {
    if a == b {
        return Ok(0.0);
    }
    let whole = rule.integrate(a, b, f);
    refine(rule, a, b, whole, abs_tol, f, 0)
}

const MAX_DEPTH: u32 = 40;

fn refine(
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    f: &dyn Fn(f64) -> f64,
    depth: u32,
) -> Result<f64, f64> {
    let mid = 0.5 * (a + b);
    let left = rule.integrate(a, mid, f);
    let right = rule.integrate(mid, b, f);
    let err = (left + right - whole).abs();
    if err <= tol || !err.is_finite() {
        if !err.is_finite() {
            return Err(err);
        }
        return Ok(left + right);
    }
    if depth >= MAX_DEPTH {
        return Err(err);
    }
    let l = refine(rule, a, mid, left, 0.5 * tol, f, depth + 1)?;
    let r = refine(rule, mid, b, right, 0.5 * tol, f, depth + 1)?;
    Ok(l + r)
}
