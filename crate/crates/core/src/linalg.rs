//! Small dense symmetric matrices: Cholesky solves and a cyclic Jacobi
//! eigensolver.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use libm::{fabs, sqrt};
use thiserror::Error;

/// Relative off-diagonal Frobenius norm at which Jacobi sweeps stop.
pub const JACOBI_REL_TOL: f64 = 1e-12;
/// Sweeps allowed before the eigensolver reports non-convergence.
pub const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EigenError {
    #[error("Jacobi iteration did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("matrix is not positive definite (pivot {pivot} = {value})")]
    NotPositiveDefinite { pivot: usize, value: f64 },
    #[error("matrix has non-finite entries")]
    NotFinite,
}

/// Symmetric matrix stored full and row-major; every write mirrors.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymmetricMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl DenseSymmetricMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    /// Builds from the upper triangle of `f(i, j)`, `i <= j`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.dim + j] = value;
        self.data[j * self.dim + i] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn frobenius_norm(&self) -> f64 {
        sqrt(self.data.iter().map(|x| x * x).sum())
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Rows and columns picked out by `indices`, in that order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), |i, j| self.get(indices[i], indices[j]))
    }

    /// `D A D` for the diagonal matrix with entries `scale`.
    pub fn congruence_by_diagonal(&self, scale: &[f64]) -> Self {
        Self::from_fn(self.dim, |i, j| scale[i] * self.get(i, j) * scale[j])
    }

    /// Plain-text rows, one per line, for debug dumps.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        for i in 0..self.dim {
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{x:.12e}");
            }
            out.push('\n');
        }
        out
    }

    pub fn cholesky(&self) -> Result<Cholesky, EigenError> {
        let n = self.dim;
        let mut lower = vec![0.0; n * n];
        for j in 0..n {
            let mut diag = self.get(j, j);
            for k in 0..j {
                diag -= lower[j * n + k] * lower[j * n + k];
            }
            if !(diag > 0.0) {
                return Err(EigenError::NotPositiveDefinite {
                    pivot: j,
                    value: diag,
                });
            }
            let pivot = sqrt(diag);
            lower[j * n + j] = pivot;
            for i in j + 1..n {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s -= lower[i * n + k] * lower[j * n + k];
                }
                lower[i * n + j] = s / pivot;
            }
        }
        Ok(Cholesky { dim: n, lower })
    }

    /// Full eigendecomposition by cyclic Jacobi rotations, eigenvalues
    /// ascending.
    pub fn symmetric_eigen(&self) -> Result<SymmetricEigen, EigenError> {
        let n = self.dim;
        if self.data.iter().any(|x| !x.is_finite()) {
            return Err(EigenError::NotFinite);
        }
        let mut a = self.data.clone();
        let mut v = Self::identity(n).data;
        let total = self.frobenius_norm();
        let threshold = JACOBI_REL_TOL * total;

        let mut converged = false;
        for _ in 0..=JACOBI_MAX_SWEEPS {
            let off = off_diagonal_norm(&a, n);
            if off <= threshold || off == 0.0 {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, n, p, q);
                }
            }
        }
        if !converged {
            return Err(EigenError::NoConvergence(JACOBI_MAX_SWEEPS));
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
        let values = order.iter().map(|&i| a[i * n + i]).collect();
        let mut vectors = vec![0.0; n * n];
        for (col, &src) in order.iter().enumerate() {
            for row in 0..n {
                vectors[row * n + col] = v[row * n + src];
            }
        }
        Ok(SymmetricEigen {
            dim: n,
            values,
            vectors,
        })
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>, EigenError> {
        self.symmetric_eigen().map(|e| e.values)
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    sqrt(s)
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if fabs(theta) > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / sqrt(t * t + 1.0);
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        a[k * n + p] = new_kp;
        a[p * n + k] = new_kp;
        a[k * n + q] = new_kq;
        a[q * n + k] = new_kq;
    }
    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}

/// Lower-triangular factor `L` with `A = L Lᵀ`.
#[derive(Debug, Clone)]
pub struct Cholesky {
    dim: usize,
    lower: Vec<f64>,
}

impl Cholesky {
    /// Solves `A x = rhs` in place.
    pub fn solve_in_place(&self, rhs: &mut [f64]) {
        let n = self.dim;
        for i in 0..n {
            let mut s = rhs[i];
            for k in 0..i {
                s -= self.lower[i * n + k] * rhs[k];
            }
            rhs[i] = s / self.lower[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = rhs[i];
            for k in i + 1..n {
                s -= self.lower[k * n + i] * rhs[k];
            }
            rhs[i] = s / self.lower[i * n + i];
        }
    }
}

#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    dim: usize,
    values: Vec<f64>,
    // Column k is the unit eigenvector for values[k].
    vectors: Vec<f64>,
}

impl SymmetricEigen {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        (0..self.dim)
            .map(|row| self.vectors[row * self.dim + k])
            .collect()
    }

    /// `Q diag(values) Qᵀ`.
    pub fn reconstruct(&self) -> DenseSymmetricMatrix {
        let n = self.dim;
        DenseSymmetricMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.vectors[i * n + k] * self.values[k] * self.vectors[j * n + k])
                .sum()
        })
    }
}
