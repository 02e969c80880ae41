//! Floating-point quantities: singular values, tolerance rank, SVD null space
//! and operator norms. Backed by nalgebra's dense SVD.

use nalgebra::DMatrix;

use super::types::{Matrix, Scalar, Vector};

/// Relative zero tolerance for float rank and null-space decisions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance(pub f64);

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(1e-9)
    }
}

impl Tolerance {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Singular values of a dense matrix, descending.
pub fn singular_values_dense(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return vec![0.0; m.nrows().min(m.ncols())];
    }
    let mut s: Vec<f64> = m.singular_values().iter().map(|v| v.max(0.0)).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Singular values of `m`, descending; `min(rows, cols)` of them.
pub fn singular_values<T: Scalar>(m: &Matrix<T>) -> Vec<f64> {
    singular_values_dense(&m.to_nalgebra())
}

/// Number of singular values above `tol * sigma_max`.
pub fn rank_with<T: Scalar>(m: &Matrix<T>, tol: Tolerance) -> usize {
    let s = singular_values(m);
    let Some(&top) = s.first() else { return 0 };
    if top == 0.0 {
        return 0;
    }
    s.iter().filter(|&&v| v > tol.0 * top).count()
}

pub fn rank_f64(m: &Matrix<f64>) -> usize {
    rank_with(m, Tolerance::default())
}

/// Orthonormal basis of the numerical null space, taken from the right
/// singular vectors whose singular values fall below `tol * sigma_max`. Each
/// vector is signed so that its first entry above `tol` is positive.
pub fn nullspace_basis_with<T: Scalar>(m: &Matrix<T>, tol: Tolerance) -> Vec<Vector<f64>> {
    let n = m.ncols();
    // Pad with zero rows so the SVD returns a full set of right singular vectors.
    let rows = m.nrows().max(n);
    let mut a = DMatrix::<f64>::zeros(rows, n);
    for i in 0..m.nrows() {
        for j in 0..n {
            a[(i, j)] = m.get(i, j).to_f64();
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let top = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let mut out = Vec::new();
    for (k, &sv) in svd.singular_values.iter().enumerate() {
        if top == 0.0 || sv <= tol.0 * top {
            let mut v: Vec<f64> = v_t.row(k).iter().cloned().collect();
            if let Some(lead) = v.iter().find(|e| e.abs() > tol.0) {
                if *lead < 0.0 {
                    v.iter_mut().for_each(|e| *e = -*e);
                }
            }
            out.push(Vector::from_f64(&v));
        }
    }
    out
}

/// Spectral norm (largest singular value).
pub fn operator_norm(m: &DMatrix<f64>) -> f64 {
    singular_values_dense(m).first().copied().unwrap_or(0.0)
}

/// Smallest of the `min(rows, cols)` singular values.
pub fn smallest_singular_value(m: &DMatrix<f64>) -> f64 {
    singular_values_dense(m).last().copied().unwrap_or(0.0)
}

/// Orthonormal basis (as columns) of the column space of `m`.
pub fn orthonormal_columns(m: &DMatrix<f64>, tol: Tolerance) -> DMatrix<f64> {
    if m.ncols() == 0 {
        return DMatrix::zeros(m.nrows(), 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("requested left singular vectors");
    let top = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| top > 0.0 && svd.singular_values[k] > tol.0 * top)
        .collect();
    DMatrix::from_fn(m.nrows(), keep.len(), |i, j| u[(i, keep[j])])
}
