//! Weighted graphs with a potential term and the graph Laplacians built on them:
//! the formal Laplacian, Dirichlet m-path Laplacians and the Dirichlet
//! transformed-path Laplacian.
//!
//! A Dirichlet Laplacian acts on functions supported on an interior node set
//! `X₀`. Neighbours outside `X₀` are not dropped silently; each one at the
//! relevant distance adds one to the *boundary potential* of the interior node.

use std::collections::VecDeque;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use faer::Mat;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A graph `G = (X, w, κ)`: nodes, symmetric nonnegative weights with zero
/// diagonal, and a potential.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    nodes: Vec<f64>,
    adjacency: Vec<Vec<(usize, f64)>>,
    potential: Vec<f64>,
}

impl Graph {
    /// Builds a graph from undirected edges `(i, j, w)`. Repeated edges add up.
    pub fn from_edges(
        nodes: Vec<f64>,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
        potential: Option<Vec<f64>>,
    ) -> Result<Self> {
        let n = nodes.len();
        let mut dense = vec![Vec::<(usize, f64)>::new(); n];
        for (i, j, w) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!("edge ({i}, {j}) out of range for {n} nodes")));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at node {i}")));
            }
            add_weight(&mut dense[i], j, w);
            add_weight(&mut dense[j], i, w);
        }
        Self::validated(nodes, dense, potential)
    }

    /// Builds a graph from a dense weight matrix, rejecting asymmetric,
    /// negative or non-finite weights and a nonzero diagonal.
    pub fn from_dense(nodes: Vec<f64>, weights: &Matrix, potential: Option<Vec<f64>>) -> Result<Self> {
        let n = nodes.len();
        if weights.nrows() != n || weights.ncols() != n {
            return Err(Error::InvalidGraph(format!(
                "weight matrix is {}x{} for {n} nodes",
                weights.nrows(),
                weights.ncols()
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (i, row) in adjacency.iter_mut().enumerate() {
            for j in 0..n {
                let w = weights[(i, j)];
                if w != weights[(j, i)] {
                    return Err(Error::InvalidGraph(format!("w({i},{j}) = {w} but w({j},{i}) = {}", weights[(j, i)])));
                }
                if i == j && w != 0.0 {
                    return Err(Error::InvalidGraph(format!("nonzero diagonal weight at node {i}")));
                }
                if w != 0.0 {
                    row.push((j, w));
                }
            }
        }
        Self::validated(nodes, adjacency, potential)
    }

    /// Unweighted path `0 ~ 1 ~ … ~ n-1` on the given coordinates, `κ ≡ 0`.
    pub fn path(nodes: Vec<f64>) -> Self {
        let n = nodes.len();
        let edges = (1..n).map(|i| (i - 1, i, 1.0));
        Self::from_edges(nodes, edges, None).expect("path graph is valid")
    }

    fn validated(nodes: Vec<f64>, adjacency: Vec<Vec<(usize, f64)>>, potential: Option<Vec<f64>>) -> Result<Self> {
        let n = nodes.len();
        for (i, row) in adjacency.iter().enumerate() {
            for &(j, w) in row {
                if !(w.is_finite() && w >= 0.0) {
                    return Err(Error::InvalidGraph(format!("weight w({i},{j}) = {w} is not a finite nonnegative number")));
                }
            }
        }
        let potential = potential.unwrap_or_else(|| vec![0.0; n]);
        if potential.len() != n {
            return Err(Error::InvalidGraph(format!("potential has {} entries for {n} nodes", potential.len())));
        }
        // κ must be bounded below; on a finite graph that means finite.
        if let Some(i) = potential.iter().position(|k| !k.is_finite()) {
            return Err(Error::InvalidGraph(format!("potential at node {i} is not finite")));
        }
        let mut adjacency = adjacency;
        for row in &mut adjacency {
            row.retain(|&(_, w)| w > 0.0);
            row.sort_by_key(|&(j, _)| j);
        }
        Ok(Self {
            nodes,
            adjacency,
            potential,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn potential(&self) -> &[f64] {
        &self.potential
    }

    /// Neighbours of node `i` with their (positive) weights, sorted by index.
    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.adjacency[i]
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.adjacency[i]
            .binary_search_by_key(&j, |&(k, _)| k)
            .map(|pos| self.adjacency[i][pos].1)
            .unwrap_or(0.0)
    }

    pub fn degree(&self, i: usize) -> f64 {
        self.adjacency[i].iter().map(|&(_, w)| w).sum()
    }

    /// True when every weight is 0 or 1.
    pub fn is_unweighted(&self) -> bool {
        self.adjacency.iter().flatten().all(|&(_, w)| w == 1.0)
    }

    pub fn with_potential(mut self, potential: Vec<f64>) -> Result<Self> {
        let adjacency = std::mem::take(&mut self.adjacency);
        Self::validated(self.nodes, adjacency, Some(potential))
    }
}

fn add_weight(row: &mut Vec<(usize, f64)>, j: usize, w: f64) {
    match row.iter_mut().find(|(k, _)| *k == j) {
        Some(entry) => entry.1 += w,
        None => row.push((j, w)),
    }
}

/// Dense `Δ = D − W + diag(κ)`.
pub fn laplacian_matrix(g: &Graph) -> Matrix {
    let n = g.len();
    let mut l = Mat::zeros(n, n);
    for i in 0..n {
        let mut degree = 0.0;
        for &(j, w) in g.neighbors(i) {
            l[(i, j)] = -w;
            degree += w;
        }
        l[(i, i)] = degree + g.potential[i];
    }
    l
}

/// `Δ[f](x_i) = Σ_j w(x_i,x_j)(f(x_i) − f(x_j)) + κ(x_i) f(x_i)`, evaluated
/// directly from the definition.
pub fn apply_laplacian(g: &Graph, f: &[f64]) -> Vec<f64> {
    assert_eq!(f.len(), g.len(), "node function has the wrong length");
    (0..g.len())
        .map(|i| {
            let diffusion: f64 = g.neighbors(i).iter().map(|&(j, w)| w * (f[i] - f[j])).sum();
            diffusion + g.potential[i] * f[i]
        })
        .collect()
}

/// Breadth-first distances from `source`; `None` marks unreachable nodes.
pub fn distances_from(g: &Graph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued nodes have a distance");
        for &(v, _) in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Combinatorial (hop) distance; `None` means the nodes are disconnected.
pub fn combinatorial_distance(g: &Graph, i: usize, j: usize) -> Option<usize> {
    if i == j {
        return Some(0);
    }
    distances_from(g, i)[j]
}

/// An ambient unweighted graph together with the interior node set on which a
/// Dirichlet Laplacian acts.
pub trait DirichletDomain {
    /// Number of interior nodes `|X₀|`.
    fn interior_len(&self) -> usize;

    /// Distance between interior nodes `a` and `b` (indices into `X₀`).
    fn interior_distance(&self, a: usize, b: usize) -> Option<usize>;

    /// Number of nodes in `X \ X₀` at distance exactly `m` from interior node `a`.
    fn boundary_count(&self, a: usize, m: usize) -> usize;

    /// Largest finite distance from an interior node to any node, or `None` when
    /// the ambient graph is infinite.
    fn reach(&self) -> Option<usize>;

    /// `Some((m₀, c))` when `Δ_{m,dir} = c·I` for every `m ≥ m₀`.
    fn saturation(&self) -> Option<(usize, f64)> {
        None
    }

    fn check_unweighted(&self) -> Result<()> {
        Ok(())
    }
}

/// A proper nonempty subset `X₀` of the nodes of a finite graph.
#[derive(Debug, Clone)]
pub struct DirichletSubset {
    ambient: Graph,
    interior: Vec<usize>,
    // distance rows from each interior node to every ambient node
    distances: Vec<Vec<Option<usize>>>,
}

impl DirichletSubset {
    pub fn new(ambient: Graph, interior: Vec<usize>) -> Result<Self> {
        let n = ambient.len();
        if interior.is_empty() || interior.len() >= n {
            return Err(Error::InvalidGraph(format!(
                "interior set must be a proper nonempty subset ({} of {n} nodes given)",
                interior.len()
            )));
        }
        let mut seen = vec![false; n];
        for &i in &interior {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidGraph(format!("interior index {i} is out of range or repeated")));
            }
        }
        let distances = interior.iter().map(|&i| distances_from(&ambient, i)).collect();
        Ok(Self {
            ambient,
            interior,
            distances,
        })
    }

    pub fn ambient(&self) -> &Graph {
        &self.ambient
    }

    pub fn interior(&self) -> &[usize] {
        &self.interior
    }
}

impl DirichletDomain for DirichletSubset {
    fn interior_len(&self) -> usize {
        self.interior.len()
    }

    fn interior_distance(&self, a: usize, b: usize) -> Option<usize> {
        self.distances[a][self.interior[b]]
    }

    fn boundary_count(&self, a: usize, m: usize) -> usize {
        let mut inside = vec![false; self.ambient.len()];
        for &i in &self.interior {
            inside[i] = true;
        }
        self.distances[a]
            .iter()
            .enumerate()
            .filter(|&(x, d)| !inside[x] && *d == Some(m))
            .count()
    }

    fn reach(&self) -> Option<usize> {
        self.distances.iter().flatten().flatten().copied().max()
    }

    fn check_unweighted(&self) -> Result<()> {
        if self.ambient.is_unweighted() {
            Ok(())
        } else {
            Err(Error::UnsupportedGraph(
                "m-path Laplacians are defined for unweighted graphs only".into(),
            ))
        }
    }
}

/// The integer line `ℤ` (nearest neighbours, unit weights) with interior
/// `X₀ = {1, …, n}`. Represented implicitly: `d(i, j) = |i − j|` and the
/// boundary potential is 0, 1 or 2 in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegerLine {
    pub n: usize,
}

impl IntegerLine {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "interior must be nonempty");
        Self { n }
    }
}

impl DirichletDomain for IntegerLine {
    fn interior_len(&self) -> usize {
        self.n
    }

    fn interior_distance(&self, a: usize, b: usize) -> Option<usize> {
        Some(a.abs_diff(b))
    }

    fn boundary_count(&self, a: usize, m: usize) -> usize {
        // interior node a (0-based) sits at integer a + 1
        let left_out = m > a;
        let right_out = a + m >= self.n;
        usize::from(left_out) + usize::from(right_out)
    }

    fn reach(&self) -> Option<usize> {
        None
    }

    fn saturation(&self) -> Option<(usize, f64)> {
        Some((self.n, 2.0))
    }
}

/// Dirichlet m-path Laplacian over `X₀`: `−1` between interior nodes at
/// distance exactly `m`, and on the diagonal the number of such interior nodes
/// plus the boundary potential `κ_{m,dir}`.
pub fn m_path_dirichlet_laplacian(domain: &dyn DirichletDomain, m: usize) -> Result<Matrix> {
    if m == 0 {
        return Err(Error::Parameter("path length m must be positive".into()));
    }
    domain.check_unweighted()?;
    let n = domain.interior_len();
    let mut l = Mat::zeros(n, n);
    for a in 0..n {
        let mut diag = domain.boundary_count(a, m) as f64;
        for b in 0..n {
            if a != b && domain.interior_distance(a, b) == Some(m) {
                l[(a, b)] = -1.0;
                diag += 1.0;
            }
        }
        l[(a, a)] = diag;
    }
    Ok(l)
}

type Coefficients = Arc<dyn Fn(usize) -> f64 + Send + Sync>;

/// Coefficient sequence `φ(m)` of a transformed-path Laplacian, with an
/// optional closed form for the tail `Σ_{m>M} φ(m)`.
#[derive(Clone)]
pub struct PathTransform {
    phi: Coefficients,
    tail: Option<Coefficients>,
}

impl fmt::Debug for PathTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PathTransform")
            .field("phi(1..4)", &(1..=4).map(|m| (self.phi)(m)).collect::<Vec<_>>())
            .field("tail", &self.tail.is_some())
            .finish()
    }
}

impl PathTransform {
    pub fn new(phi: impl Fn(usize) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            phi: Arc::new(phi),
            tail: None,
        }
    }

    /// Attach `tail(M) = Σ_{m>M} φ(m)`.
    pub fn with_tail(mut self, tail: impl Fn(usize) -> f64 + Send + Sync + 'static) -> Self {
        self.tail = Some(Arc::new(tail));
        self
    }

    /// `φ(m) = (−1)^{m+1}·2/m²`, whose transformed-path Laplacian on the integer
    /// line is the Toeplitz matrix generated by the symbol `θ²` on `[0, π]`.
    pub fn squared_symbol() -> Self {
        fn phi(m: usize) -> f64 {
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            sign * 2.0 / (m as f64).powi(2)
        }
        Self::new(phi).with_tail(|big_m| {
            // Σ_{m≥1} φ(m) = π²/6; summing the head from small terms up keeps the
            // cancellation error at a few ulps.
            let head: f64 = (1..=big_m).rev().map(phi).sum();
            PI * PI / 6.0 - head
        })
    }

    pub fn coefficient(&self, m: usize) -> f64 {
        (self.phi)(m)
    }

    pub fn tail(&self, big_m: usize) -> Option<f64> {
        self.tail.as_ref().map(|t| t(big_m))
    }

    /// `Σ_{m=M+1}^{100M} |φ(m)|`, a numerical proxy for the absolute tail.
    pub fn absolute_tail_estimate(&self, big_m: usize) -> f64 {
        ((big_m + 1)..=(100 * big_m)).map(|m| (self.phi)(m).abs()).sum()
    }

    /// Numerical summability check: the absolute tail after `10⁴` terms must be
    /// below `tol` and smaller than the tail after `10³` terms.
    pub fn check_summable(&self, tol: f64) -> Result<()> {
        let coarse = self.absolute_tail_estimate(1_000);
        let fine = self.absolute_tail_estimate(10_000);
        if fine.is_finite() && fine <= tol && fine <= coarse {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "coefficients do not look absolutely summable (tail estimates {coarse:e}, {fine:e})"
            )))
        }
    }
}

/// How many path lengths enter a transformed-path Laplacian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// `Σ_{m=1}^{M} φ(m)·Δ_{m,dir}` with no tail correction.
    Terms(usize),
    /// The full series: summed to the graph's reach, or closed with the tail
    /// rule once `Δ_{m,dir}` saturates to a multiple of the identity.
    Analytic,
}

/// Dirichlet transformed-path Laplacian `Σ_m φ(m)·Δ_{m,dir}`.
///
/// Entries are accumulated directly: `−φ(d(a,b))` off the diagonal and
/// `Σ_m φ(m)·(#interior + κ_{m,dir})` on it, which equals summing the m-path
/// matrices without materialising each one.
pub fn transformed_path_laplacian(
    domain: &dyn DirichletDomain,
    transform: &PathTransform,
    truncation: Truncation,
) -> Result<Matrix> {
    domain.check_unweighted()?;
    let n = domain.interior_len();
    let (terms, shift) = match truncation {
        Truncation::Terms(m) => (m, 0.0),
        Truncation::Analytic => match (domain.reach(), domain.saturation()) {
            (Some(reach), _) => (reach, 0.0),
            (None, Some((m0, c))) => {
                let tail = transform.tail(m0 - 1).ok_or_else(|| {
                    Error::InsufficientSpecification(format!(
                        "the ambient graph is infinite; an analytic sum needs a tail rule for Σ_{{m≥{m0}}} φ(m)"
                    ))
                })?;
                (m0 - 1, c * tail)
            }
            (None, None) => {
                return Err(Error::InsufficientSpecification(
                    "infinite ambient graph without a saturation rule".into(),
                ))
            }
        },
    };

    let mut l = Mat::zeros(n, n);
    for a in 0..n {
        let mut diag = shift;
        // interior neighbours at each distance contribute to the diagonal too
        for b in 0..n {
            if a == b {
                continue;
            }
            if let Some(d) = domain.interior_distance(a, b) {
                if d >= 1 && d <= terms {
                    let phi = transform.coefficient(d);
                    l[(a, b)] = -phi;
                    diag += phi;
                }
            }
        }
        for m in 1..=terms {
            let k = domain.boundary_count(a, m);
            if k > 0 {
                diag += transform.coefficient(m) * k as f64;
            }
        }
        l[(a, a)] = diag;
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, symmetric_eigenvalues};

    fn line_nodes(n: usize) -> Vec<f64> {
        (0..n).map(|i| i as f64).collect()
    }

    #[test]
    fn path_laplacian_by_hand() {
        let g = Graph::path(line_nodes(3));
        let l = laplacian_matrix(&g);
        let expected = [[1.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 1.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l[(i, j)], expected[i][j]);
            }
        }
        assert_eq!(apply_laplacian(&g, &[1.0, 1.0, 1.0]), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn unit_potential_shifts_constants() {
        let g = Graph::from_edges(line_nodes(4), [(0, 1, 0.5), (1, 3, 2.0), (2, 3, 1.0)], Some(vec![1.0; 4])).unwrap();
        assert_eq!(apply_laplacian(&g, &[1.0; 4]), vec![1.0; 4]);
        let l = laplacian_matrix(&g);
        assert_eq!(crate::linalg::matvec(&l, &[1.0; 4]), vec![1.0; 4]);
    }

    #[test]
    fn rejects_asymmetric_and_negative_weights() {
        let mut w = Mat::zeros(2, 2);
        w[(0, 1)] = 1.0;
        assert!(matches!(Graph::from_dense(line_nodes(2), &w, None), Err(Error::InvalidGraph(_))));
        w[(1, 0)] = 1.0;
        assert!(Graph::from_dense(line_nodes(2), &w, None).is_ok());
        assert!(matches!(
            Graph::from_edges(line_nodes(2), [(0, 1, -1.0)], None),
            Err(Error::InvalidGraph(_))
        ));
    }

    #[test]
    fn distances_on_paths_and_components() {
        let g = Graph::path(line_nodes(10));
        assert_eq!(combinatorial_distance(&g, 3, 7), Some(4));
        assert_eq!(combinatorial_distance(&g, 5, 5), Some(0));
        let split = Graph::from_edges(line_nodes(4), [(0, 1, 1.0), (2, 3, 1.0)], None).unwrap();
        assert_eq!(combinatorial_distance(&split, 0, 3), None);
    }

    #[test]
    fn line_closed_form_matches_bfs() {
        // finite stand-in for ℤ: a long path with the interior in the middle
        let n = 6;
        let pad = 3 * n;
        let ambient = Graph::path(line_nodes(n + 2 * pad));
        let subset = DirichletSubset::new(ambient, (pad..pad + n).collect()).unwrap();
        let line = IntegerLine::new(n);
        for m in 1..=(2 * n) {
            let a = m_path_dirichlet_laplacian(&subset, m).unwrap();
            let b = m_path_dirichlet_laplacian(&line, m).unwrap();
            assert_eq!(max_abs_diff(&a, &b), 0.0, "m = {m}");
        }
    }

    #[test]
    fn one_path_is_tridiagonal_and_saturates() {
        let n = 5;
        let l1 = m_path_dirichlet_laplacian(&IntegerLine::new(n), 1).unwrap();
        for i in 0..n {
            assert_eq!(l1[(i, i)], 2.0);
            if i + 1 < n {
                assert_eq!(l1[(i, i + 1)], -1.0);
            }
        }
        for m in [n, n + 1, 3 * n] {
            let lm = m_path_dirichlet_laplacian(&IntegerLine::new(n), m).unwrap();
            assert_eq!(max_abs_diff(&lm, &crate::linalg::diagonal(&vec![2.0; n])), 0.0);
        }
    }

    #[test]
    fn m_equal_n_minus_one_only_couples_the_ends() {
        let n = 4;
        let l = m_path_dirichlet_laplacian(&IntegerLine::new(n), n - 1).unwrap();
        assert_eq!(l[(0, n - 1)], -1.0);
        assert_eq!(l[(n - 1, 0)], -1.0);
        assert_eq!(l[(1, 2)], 0.0);
        for i in 0..n {
            assert_eq!(l[(i, i)], 2.0);
        }
    }

    #[test]
    fn one_path_equals_restricted_ambient_laplacian_plus_boundary_potential() {
        let ambient = Graph::path(line_nodes(8));
        let interior: Vec<usize> = (2..6).collect();
        let subset = DirichletSubset::new(ambient.clone(), interior.clone()).unwrap();
        let l1 = m_path_dirichlet_laplacian(&subset, 1).unwrap();
        let full = laplacian_matrix(&ambient);
        for (a, &i) in interior.iter().enumerate() {
            for (b, &j) in interior.iter().enumerate() {
                assert_eq!(l1[(a, b)], full[(i, j)]);
            }
        }
    }

    #[test]
    fn weighted_ambient_is_rejected() {
        let g = Graph::from_edges(line_nodes(3), [(0, 1, 0.5), (1, 2, 1.0)], None).unwrap();
        let subset = DirichletSubset::new(g, vec![1]).unwrap();
        assert!(matches!(m_path_dirichlet_laplacian(&subset, 1), Err(Error::UnsupportedGraph(_))));
    }

    #[test]
    fn subset_must_be_proper_and_nonempty() {
        let g = Graph::path(line_nodes(3));
        assert!(DirichletSubset::new(g.clone(), vec![]).is_err());
        assert!(DirichletSubset::new(g.clone(), vec![0, 1, 2]).is_err());
        assert!(DirichletSubset::new(g, vec![1, 1]).is_err());
    }

    #[test]
    fn analytic_transformed_path_gives_the_stencil() {
        let l = transformed_path_laplacian(&IntegerLine::new(4), &PathTransform::squared_symbol(), Truncation::Analytic)
            .unwrap();
        let row = [PI * PI / 3.0, -2.0, 0.5, -2.0 / 9.0];
        for i in 0..4 {
            for j in 0..4 {
                assert!((l[(i, j)] - row[i.abs_diff(j)]).abs() < 1e-13, "({i},{j})");
            }
        }
    }

    #[test]
    fn zero_and_single_term_transforms() {
        let line = IntegerLine::new(5);
        let zero = transformed_path_laplacian(&line, &PathTransform::new(|_| 0.0), Truncation::Terms(50)).unwrap();
        assert_eq!(crate::linalg::max_abs(&zero), 0.0);
        let one = transformed_path_laplacian(&line, &PathTransform::new(|m| f64::from(m == 1)), Truncation::Terms(1))
            .unwrap();
        assert_eq!(max_abs_diff(&one, &m_path_dirichlet_laplacian(&line, 1).unwrap()), 0.0);
    }

    #[test]
    fn direct_sum_matches_sum_of_m_path_matrices() {
        let line = IntegerLine::new(6);
        let t = PathTransform::squared_symbol();
        let direct = transformed_path_laplacian(&line, &t, Truncation::Terms(9)).unwrap();
        let mut summed = Mat::<f64>::zeros(6, 6);
        for m in 1..=9 {
            summed += m_path_dirichlet_laplacian(&line, m).unwrap() * faer::scale(t.coefficient(m));
        }
        assert!(max_abs_diff(&direct, &summed) < 1e-14);
    }

    #[test]
    fn analytic_without_tail_on_infinite_line_is_an_error() {
        let t = PathTransform::new(|m| 1.0 / (m * m) as f64);
        let err = transformed_path_laplacian(&IntegerLine::new(3), &t, Truncation::Analytic);
        assert!(matches!(err, Err(Error::InsufficientSpecification(_))));
    }

    #[test]
    fn analytic_on_finite_graph_sums_to_reach() {
        let g = Graph::path(line_nodes(5));
        let subset = DirichletSubset::new(g, vec![1, 2, 3]).unwrap();
        let t = PathTransform::new(|m| 1.0 / m as f64);
        let a = transformed_path_laplacian(&subset, &t, Truncation::Analytic).unwrap();
        let b = transformed_path_laplacian(&subset, &t, Truncation::Terms(40)).unwrap();
        assert_eq!(subset.reach(), Some(3));
        assert!(max_abs_diff(&a, &b) < 1e-15);
    }

    #[test]
    fn squared_symbol_is_summable() {
        PathTransform::squared_symbol().check_summable(1e-3).unwrap();
        assert!(PathTransform::new(|m| 1.0 / m as f64).check_summable(1e-3).is_err());
    }

    #[test]
    fn path_laplacian_is_psd() {
        let g = Graph::from_edges(line_nodes(5), [(0, 1, 0.3), (1, 2, 2.0), (0, 4, 1.5), (2, 3, 0.1)], None).unwrap();
        let eig = symmetric_eigenvalues(&laplacian_matrix(&g));
        assert!(eig[0] > -1e-12);
    }
}
