//! Laplacian, harmonic extension and the Dirichlet-to-Neumann map.
//!
//! For a graph with boundary `B` and interior `I`, the Dirichlet-to-Neumann
//! matrix is the Schur complement `L_BB - L_BI L_II^{-1} L_IB` of the graph
//! Laplacian. When the interior is empty the harmonic extension is the
//! identity and the map is `L` itself. Boundary-indexed vectors follow the
//! increasing order of [`GraphWithBoundary::boundary`].

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use libm::fabs;
use thiserror::Error;

use crate::graph::GraphWithBoundary;
use crate::linalg::{DenseSymmetricMatrix, EigenError};
use crate::EIGEN_TOL;

/// Relative residual under which an eigenpair claim counts as verified.
pub const EIGENPAIR_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("boundary vertices are not an independent set")]
    BoundaryNotIndependent,
    #[error("deformation parameter must be positive and finite, got {0}")]
    InvalidDeformation(f64),
}

/// Eigenvalues in nondecreasing order with the tolerance used to group them.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricSpectrum {
    values: Vec<f64>,
    tolerance: f64,
}

impl SymmetricSpectrum {
    pub fn new(mut values: Vec<f64>, tolerance: f64) -> Self {
        values.sort_by(f64::total_cmp);
        Self { values, tolerance }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The `k`-th smallest eigenvalue, counting from 1.
    pub fn sigma(&self, k: usize) -> Option<f64> {
        k.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    /// Distinct values with multiplicities; runs whose consecutive gaps are
    /// within tolerance are merged and represented by their mean.
    pub fn multiplicities(&self) -> Vec<(f64, usize)> {
        let mut groups: Vec<(f64, usize)> = Vec::new();
        let mut last = f64::NEG_INFINITY;
        for &x in &self.values {
            match groups.last_mut() {
                Some((sum, count)) if x - last <= self.tolerance => {
                    *sum += x;
                    *count += 1;
                }
                _ => groups.push((x, 1)),
            }
            last = x;
        }
        groups
            .into_iter()
            .map(|(sum, count)| (sum / count as f64, count))
            .collect()
    }

    /// Largest entrywise deviation from `expected`, or `None` on a length
    /// mismatch.
    pub fn max_deviation(&self, expected: &[f64]) -> Option<f64> {
        (expected.len() == self.values.len()).then(|| {
            self.values
                .iter()
                .zip(expected)
                .map(|(a, b)| fabs(a - b))
                .fold(0.0, f64::max)
        })
    }

    pub fn matches(&self, expected: &[f64]) -> bool {
        self.max_deviation(expected)
            .is_some_and(|d| d <= self.tolerance)
    }
}

pub fn laplacian(graph: &GraphWithBoundary) -> DenseSymmetricMatrix {
    let n = graph.order();
    let mut l = DenseSymmetricMatrix::zeros(n);
    for v in 0..n {
        l.set(v, v, graph.degree(v) as f64);
    }
    for &(u, v) in graph.edges() {
        l.set(u, v, -1.0);
    }
    l
}

/// Extends boundary data to the unique function that is harmonic at every
/// interior vertex.
pub fn harmonic_extension(
    graph: &GraphWithBoundary,
    f_boundary: &[f64],
) -> Result<Vec<f64>, SpectralError> {
    let boundary = graph.boundary();
    if f_boundary.len() != boundary.len() {
        return Err(SpectralError::LengthMismatch {
            expected: boundary.len(),
            got: f_boundary.len(),
        });
    }
    let mut full = vec![0.0; graph.order()];
    for (&v, &x) in boundary.iter().zip(f_boundary) {
        full[v] = x;
    }
    let interior = graph.interior();
    if interior.is_empty() {
        return Ok(full);
    }
    let l = laplacian(graph);
    let chol = l.principal_submatrix(&interior).cholesky()?;
    // L_II h = -L_IB f
    let mut rhs: Vec<f64> = interior
        .iter()
        .map(|&i| {
            -boundary
                .iter()
                .zip(f_boundary)
                .map(|(&b, &x)| l.get(i, b) * x)
                .sum::<f64>()
        })
        .collect();
    chol.solve_in_place(&mut rhs);
    for (&i, h) in interior.iter().zip(rhs) {
        full[i] = h;
    }
    Ok(full)
}

/// `sum over y ~ x of (f(x) - f(y))` at every boundary vertex `x`.
pub fn normal_derivative(graph: &GraphWithBoundary, f: &[f64]) -> Vec<f64> {
    graph
        .boundary()
        .iter()
        .map(|&x| vertex_laplacian(graph, f, x))
        .collect()
}

fn vertex_laplacian(graph: &GraphWithBoundary, f: &[f64], x: usize) -> f64 {
    graph.neighbors(x).iter().map(|&y| f[x] - f[y]).sum()
}

/// Dirichlet-to-Neumann matrix as a Schur complement of the Laplacian.
pub fn dtn_matrix(graph: &GraphWithBoundary) -> Result<DenseSymmetricMatrix, SpectralError> {
    let l = laplacian(graph);
    let boundary = graph.boundary();
    let interior = graph.interior();
    let mut dtn = l.principal_submatrix(boundary);
    if interior.is_empty() {
        return Ok(dtn);
    }
    let chol = l.principal_submatrix(&interior).cholesky()?;
    // Column j of L_II^{-1} L_IB.
    let solved: Vec<Vec<f64>> = boundary
        .iter()
        .map(|&b| {
            let mut col: Vec<f64> = interior.iter().map(|&i| l.get(i, b)).collect();
            chol.solve_in_place(&mut col);
            col
        })
        .collect();
    for (p, &bp) in boundary.iter().enumerate() {
        for q in p..boundary.len() {
            let correction: f64 = interior
                .iter()
                .zip(&solved[q])
                .map(|(&i, x)| l.get(bp, i) * x)
                .sum();
            dtn.set(p, q, dtn.get(p, q) - correction);
        }
    }
    Ok(dtn)
}

/// The same matrix assembled column by column: harmonic extension of each
/// boundary indicator, followed by its normal derivative.
pub fn dtn_matrix_from_extensions(
    graph: &GraphWithBoundary,
) -> Result<Vec<Vec<f64>>, SpectralError> {
    let b = graph.boundary().len();
    (0..b)
        .map(|j| {
            let mut e = vec![0.0; b];
            e[j] = 1.0;
            let ext = harmonic_extension(graph, &e)?;
            Ok(normal_derivative(graph, &ext))
        })
        .collect()
}

/// All `|B|` Steklov eigenvalues, ascending.
pub fn steklov_spectrum(graph: &GraphWithBoundary) -> Result<SymmetricSpectrum, SpectralError> {
    let values = dtn_matrix(graph)?.eigenvalues()?;
    Ok(SymmetricSpectrum::new(values, EIGEN_TOL))
}

/// A claimed Steklov eigenvalue with its eigenfunction on every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenpairClaim {
    pub label: String,
    pub sigma: f64,
    pub values: Vec<f64>,
    /// Advisory claims are reported but never gate a verification run.
    pub advisory: bool,
}

impl EigenpairClaim {
    pub fn new(label: impl Into<String>, sigma: f64, values: Vec<f64>) -> Self {
        Self {
            label: label.into(),
            sigma,
            values,
            advisory: false,
        }
    }

    pub fn advisory(mut self) -> Self {
        self.advisory = true;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// Max over interior `x` of `|sum_{y~x} (f(x) - f(y))|`.
    pub interior: f64,
    /// Max over boundary `x` of `|df/dn(x) - sigma f(x)|`.
    pub boundary: f64,
    /// `max |f|`, the scale residuals are judged against.
    pub scale: f64,
    pub boundary_nonzero: bool,
}

impl ResidualReport {
    pub fn verified(&self) -> bool {
        self.boundary_nonzero
            && self.interior < EIGENPAIR_REL_TOL * self.scale
            && self.boundary < EIGENPAIR_REL_TOL * self.scale
    }
}

pub fn verify_eigenpair(
    graph: &GraphWithBoundary,
    claim: &EigenpairClaim,
) -> Result<ResidualReport, SpectralError> {
    let f = &claim.values;
    if f.len() != graph.order() {
        return Err(SpectralError::LengthMismatch {
            expected: graph.order(),
            got: f.len(),
        });
    }
    let mut report = ResidualReport {
        interior: 0.0,
        boundary: 0.0,
        scale: f.iter().map(|x| fabs(*x)).fold(0.0, f64::max),
        boundary_nonzero: graph.boundary().iter().any(|&v| f[v] != 0.0),
    };
    for x in 0..graph.order() {
        let lap = vertex_laplacian(graph, f, x);
        if graph.is_boundary(x) {
            report.boundary = report.boundary.max(fabs(lap - claim.sigma * f[x]));
        } else {
            report.interior = report.interior.max(fabs(lap));
        }
    }
    Ok(report)
}

/// `D L D` with `D` equal to 1 on the boundary and `r` on the interior.
pub fn deformed_laplacian(
    graph: &GraphWithBoundary,
    r: f64,
) -> Result<DenseSymmetricMatrix, SpectralError> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(SpectralError::InvalidDeformation(r));
    }
    let scale: Vec<f64> = (0..graph.order())
        .map(|v| if graph.is_boundary(v) { 1.0 } else { r })
        .collect();
    Ok(laplacian(graph).congruence_by_diagonal(&scale))
}

pub fn deformed_spectrum(
    graph: &GraphWithBoundary,
    r: f64,
) -> Result<SymmetricSpectrum, SpectralError> {
    let values = deformed_laplacian(graph, r)?.eigenvalues()?;
    Ok(SymmetricSpectrum::new(values, EIGEN_TOL))
}

/// Largest `sigma_k - d_k`, where `d_1 <= d_2 <= ...` are the boundary
/// degrees. Requires an independent boundary.
pub fn degree_bound_excess(graph: &GraphWithBoundary) -> Result<f64, SpectralError> {
    if !graph.boundary_is_independent() {
        return Err(SpectralError::BoundaryNotIndependent);
    }
    let mut degrees: Vec<usize> = graph.boundary().iter().map(|&v| graph.degree(v)).collect();
    degrees.sort_unstable();
    let spectrum = steklov_spectrum(graph)?;
    Ok(spectrum
        .values()
        .iter()
        .zip(&degrees)
        .map(|(&s, &d)| s - d as f64)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Whether `sigma_k <= d_k` holds for every `k`, up to [`EIGEN_TOL`].
pub fn boundary_degree_bound_check(graph: &GraphWithBoundary) -> Result<bool, SpectralError> {
    Ok(degree_bound_excess(graph)? <= EIGEN_TOL)
}
