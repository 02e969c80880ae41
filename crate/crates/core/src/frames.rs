//! Finite families of vectors in `R^n` and their frame-theoretic constants.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{
    self, exact_from_f64, operator_norm, snap_f64, Matrix, Rational, Scalar, Tolerance, Vector,
};

/// An ordered family of `m >= 1` vectors in `R^n`. Spanning is not required;
/// zero vectors are allowed. The backend is the entry type: [`ExactFrame`]
/// for rationals, [`FloatFrame`] for `f64`.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame<T = Rational> {
    dim: usize,
    vectors: Vec<Vector<T>>,
}

pub type ExactFrame = Frame<Rational>;
pub type FloatFrame = Frame<f64>;

impl<T: Scalar> Frame<T> {
    pub fn new(vectors: Vec<Vector<T>>) -> Result<Self> {
        let first = vectors.first().ok_or(Error::EmptyFrame)?;
        let dim = first.len();
        if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::LengthMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(Self { dim, vectors })
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vectors `m`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector<T>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &Vector<T> {
        &self.vectors[i]
    }

    /// The `m x n` matrix whose rows are the frame vectors.
    pub fn matrix(&self) -> Matrix<T> {
        Matrix::from_rows(self.vectors.clone(), self.dim).expect("frame rows share a length")
    }

    /// Rows restricted to the given indices.
    pub fn rows(&self, idx: &[usize]) -> Matrix<T> {
        let rows = idx.iter().map(|&i| self.vectors[i].clone()).collect();
        Matrix::from_rows(rows, self.dim).expect("frame rows share a length")
    }

    pub fn to_f64(&self) -> FloatFrame {
        Frame {
            dim: self.dim,
            vectors: self.vectors.iter().map(Vector::to_f64).collect(),
        }
    }

    /// `m x n` analysis matrix in nalgebra form.
    pub fn analysis_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.len(), self.dim, |i, j| self.vectors[i][j].to_f64())
    }
}

impl ExactFrame {
    /// Frame from integer rows. Panics on ragged or empty input.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::new(rows.iter().map(|r| Vector::from_ints(r)).collect()).expect("valid integer frame")
    }

    /// Canonical basis of `R^n`.
    pub fn canonical(n: usize) -> Self {
        Self::new((0..n).map(|i| Vector::unit(n, i)).collect()).expect("n >= 1")
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix())
    }

    /// Frame with each vector multiplied by the matching scalar.
    pub fn rescaled(&self, scales: &[Rational]) -> Self {
        let vectors = self
            .vectors
            .iter()
            .zip(scales)
            .map(|(v, c)| v.scale(c))
            .collect();
        Frame {
            dim: self.dim,
            vectors,
        }
    }
}

impl FloatFrame {
    pub fn from_f64_rows(rows: &[&[f64]]) -> Self {
        Self::new(rows.iter().map(|r| Vector::from_f64(r)).collect()).expect("valid float frame")
    }

    /// Exact frame holding the bit-exact rational value of every entry.
    pub fn to_exact(&self) -> Result<ExactFrame> {
        let vectors = self
            .vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&e| {
                        exact_from_f64(e)
                            .ok_or_else(|| Error::InvalidArgument(format!("non-finite entry {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
                    .and_then(Vector::new)
            })
            .collect::<Result<Vec<_>>>()?;
        Frame::new(vectors)
    }

    /// Exact frame with every entry snapped to the nearest multiple of `1/den`.
    pub fn rationalize(&self, den: u64) -> ExactFrame {
        let vectors = self
            .vectors
            .iter()
            .map(|v| v.map(|&e| snap_f64(e, den)))
            .collect();
        Frame {
            dim: self.dim,
            vectors,
        }
    }

    pub fn rank(&self, tol: Tolerance) -> usize {
        linalg::rank_with(&self.matrix(), tol)
    }
}

/// Lower and upper bounds of a frame (or of a Riesz sequence).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
    pub tight: bool,
    pub parseval: bool,
}

impl FrameBounds {
    fn from_extremes(lower: f64, upper: f64, tol: Tolerance) -> Self {
        let lower = lower.max(0.0);
        let upper = upper.max(lower);
        let tight = upper - lower <= tol.0 * upper.max(f64::MIN_POSITIVE);
        let parseval = tight && (lower - 1.0).abs() <= tol.0 && (upper - 1.0).abs() <= tol.0;
        Self {
            lower,
            upper,
            tight,
            parseval,
        }
    }
}

fn symmetric_extremes(s: DMatrix<f64>) -> (f64, f64) {
    let eig = s.symmetric_eigen().eigenvalues;
    let lo = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

/// Extreme eigenvalues of the frame operator `sum x_i x_i^T`.
pub fn frame_bounds<T: Scalar>(frame: &Frame<T>) -> FrameBounds {
    frame_bounds_with(frame, Tolerance::default())
}

pub fn frame_bounds_with<T: Scalar>(frame: &Frame<T>, tol: Tolerance) -> FrameBounds {
    let a = frame.analysis_dense();
    let (lo, hi) = symmetric_extremes(a.transpose() * &a);
    FrameBounds::from_extremes(lo, hi, tol)
}

/// Riesz bounds: extreme eigenvalues of the Gram matrix. The family must be
/// linearly independent (checked exactly for rational frames, with the
/// tolerance rank for float frames).
pub fn riesz_bounds<T: Scalar>(frame: &Frame<T>) -> Result<FrameBounds> {
    let tol = Tolerance::default();
    let rank = T::native_rank(&frame.matrix());
    if rank < frame.len() {
        return Err(Error::DependentFamily {
            rank,
            count: frame.len(),
        });
    }
    let a = frame.analysis_dense();
    let (lo, hi) = symmetric_extremes(&a * a.transpose());
    Ok(FrameBounds::from_extremes(lo, hi, tol))
}

/// Largest dimension accepted by [`unconditional_constant`].
pub const MAX_UNCONDITIONAL_DIM: usize = 20;

/// Unconditional basis constant: the maximum over sign patterns `eps` of the
/// operator norm of `X D_eps X^{-1}`, where the columns of `X` are the basis
/// vectors. Patterns `eps` and `-eps` give the same map, so only `2^(n-1)`
/// are evaluated.
pub fn unconditional_constant<T: Scalar>(frame: &Frame<T>) -> Result<f64> {
    let n = frame.dim();
    if frame.len() != n {
        return Err(Error::NotABasis);
    }
    if n > MAX_UNCONDITIONAL_DIM {
        return Err(Error::SizeLimit(format!(
            "unconditional constant enumerates 2^n sign patterns; n = {n} exceeds {MAX_UNCONDITIONAL_DIM}"
        )));
    }
    if T::native_rank(&frame.matrix()) < n {
        return Err(Error::NotABasis);
    }
    let synthesis = frame.analysis_dense().transpose();
    let inverse = synthesis.clone().try_inverse().ok_or(Error::NotABasis)?;
    Ok(unconditional_constant_dense(&synthesis, &inverse))
}

/// Same as [`unconditional_constant`] for a basis given as the columns of an
/// invertible matrix together with its inverse.
pub fn unconditional_constant_dense(synthesis: &DMatrix<f64>, inverse: &DMatrix<f64>) -> f64 {
    let n = synthesis.ncols();
    let mut best = 1.0_f64;
    for mask in 0u64..(1u64 << n.saturating_sub(1)) {
        let mut flipped = synthesis.clone();
        for j in 0..n {
            if mask >> j & 1 == 1 {
                flipped.column_mut(j).neg_mut();
            }
        }
        best = best.max(operator_norm(&(flipped * inverse)));
    }
    best
}
