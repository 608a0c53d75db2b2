//! Cyclic Jacobi eigensolver for dense real symmetric matrices.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Default target for the off-diagonal Frobenius norm.
pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_SWEEPS: usize = 100;
/// Symmetry required of the input, relative to its largest entry (at least 1).
pub const INPUT_SYMMETRY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug)]
pub struct JacobiOptions {
    pub tol: f64,
    pub max_sweeps: usize,
    pub vectors: bool,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        JacobiOptions { tol: DEFAULT_TOL, max_sweeps: DEFAULT_MAX_SWEEPS, vectors: true }
    }
}

/// Ascending eigenvalues and, optionally, the matching orthonormal
/// eigenvectors as the columns of `vectors`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub vectors: Option<Matrix<f64>>,
    pub sweeps: usize,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn max(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }

    pub fn min(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }

    /// Number of eigenvalues within `tol` of `value`.
    pub fn count_near(&self, value: f64, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|x| (*x - value).abs() <= tol).count()
    }

    /// `‖Q Λ Qᵀ − A‖_max`, if vectors were kept.
    pub fn reconstruction_residual(&self, a: &Matrix<f64>) -> Option<f64> {
        let q = self.vectors.as_ref()?;
        let n = self.len();
        let scaled = Matrix::from_fn(n, n, |r, c| q[(r, c)] * self.eigenvalues[c]);
        Some(scaled.matmul(&q.transpose()).max_abs_diff(a))
    }

    /// `‖QᵀQ − I‖_max`, if vectors were kept.
    pub fn orthogonality_defect(&self) -> Option<f64> {
        let q = self.vectors.as_ref()?;
        Some(q.transpose().matmul(q).max_abs_diff(&Matrix::identity(self.len())))
    }

    /// The eigenvector for the `k`-th eigenvalue.
    pub fn vector(&self, k: usize) -> Option<Vec<f64>> {
        let q = self.vectors.as_ref()?;
        Some((0..q.rows()).map(|r| q[(r, k)]).collect())
    }
}

fn off_diagonal_norm(a: &Matrix<f64>) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                sum += a[(r, c)] * a[(r, c)];
            }
        }
    }
    sum.sqrt()
}

/// Eigen-decomposition with default options and the given off-diagonal tolerance.
pub fn symmetric_eigen(a: &Matrix<f64>, tol: f64) -> Result<Spectrum> {
    symmetric_eigen_with(a, JacobiOptions { tol, ..JacobiOptions::default() })
}

pub fn symmetric_eigen_with(a: &Matrix<f64>, opts: JacobiOptions) -> Result<Spectrum> {
    if !a.is_square() {
        return Err(Error::MalformedInput(format!("matrix is {}x{}, not square", a.rows(), a.cols())));
    }
    let n = a.rows();
    let scale = a.max_abs().max(1.0);
    let defect = a.symmetry_defect();
    if defect > INPUT_SYMMETRY_TOL * scale || a.max_abs().is_nan() {
        return Err(Error::NotSymmetric(defect));
    }

    let mut m = a.clone();
    let mut v = opts.vectors.then(|| Matrix::identity(n));
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&m);
        if off <= opts.tol {
            break;
        }
        if sweeps == opts.max_sweeps {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut m, v.as_mut(), p, q, c, s);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[(x, x)].total_cmp(&m[(y, y)]));
    let eigenvalues = order.iter().map(|&k| m[(k, k)]).collect();
    let vectors = v.map(|v| Matrix::from_fn(n, n, |r, c| v[(r, order[c])]));
    Ok(Spectrum { eigenvalues, vectors, sweeps })
}

/// Applies `Jᵀ M J` for the rotation in the `(p, q)` plane, zeroing `m[p][q]`.
fn rotate(m: &mut Matrix<f64>, v: Option<&mut Matrix<f64>>, p: usize, q: usize, c: f64, s: f64) {
    let n = m.rows();
    let app = m[(p, p)];
    let aqq = m[(q, q)];
    let apq = m[(p, q)];
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        m[(k, p)] = new_kp;
        m[(p, k)] = new_kp;
        m[(k, q)] = new_kq;
        m[(q, k)] = new_kq;
    }
    let t = s / c;
    m[(p, p)] = app - t * apq;
    m[(q, q)] = aqq + t * apq;
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;
    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = c * vkp - s * vkq;
            v[(k, q)] = s * vkp + c * vkq;
        }
    }
}
