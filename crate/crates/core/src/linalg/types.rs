use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Entry type of a vector or matrix. Implemented by [`Rational`] (the exact
/// backend) and `f64` (the float backend).
pub trait Scalar: Clone + fmt::Debug + PartialEq + Zero + One + Send + Sync + 'static {
    fn to_f64(&self) -> f64;
    /// `-1`, `0` or `1`. Exact for rationals; floats compare against `0.0`.
    fn sign(&self) -> i8;
    fn is_exact() -> bool;
    /// Rank under the backend's own rule: exact elimination for rationals,
    /// the default relative tolerance for floats.
    fn native_rank(m: &Matrix<Self>) -> usize;
}

impl Scalar for Rational {
    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }

    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    fn is_exact() -> bool {
        true
    }

    fn native_rank(m: &Matrix<Self>) -> usize {
        super::exact::rank(m)
    }
}

impl Scalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }

    fn sign(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }

    fn is_exact() -> bool {
        false
    }

    fn native_rank(m: &Matrix<Self>) -> usize {
        super::float::rank_f64(m)
    }
}

/// Converts a rational to the nearest `f64`, including values whose numerator
/// and denominator overflow `f64` on their own.
pub fn ratio_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let shift = q.numer().bits().max(q.denom().bits()) as i64 - 1000;
    let shift = shift.max(0) as usize;
    let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
    n / d
}

/// Builds a rational from an integer.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Builds `num / den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational value of a finite float (every finite `f64` is dyadic).
pub fn exact_from_f64(v: f64) -> Option<Rational> {
    Rational::from_f64(v)
}

/// Snaps a float to the nearest rational with denominator `den`.
pub fn snap_f64(v: f64, den: u64) -> Rational {
    let scaled = (v * den as f64).round();
    let num = BigInt::from_f64(scaled).unwrap_or_default();
    Rational::new(num, BigInt::from(den))
}

/// A vector of fixed length `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<T>(Vec<T>);

impl<T: Scalar> Vector<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(Self(entries))
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "vector length must be positive");
        Self(vec![T::zero(); n])
    }

    /// The `i`-th canonical basis vector of length `n` (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = T::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[T] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<T> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.sign() == 0)
    }

    /// Indices of nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i].sign() != 0).collect()
    }

    pub fn to_f64(&self) -> Vector<f64> {
        Vector(self.0.iter().map(Scalar::to_f64).collect())
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> Vector<U> {
        Vector(self.0.iter().map(f).collect())
    }
}

impl Vector<Rational> {
    pub fn from_ints(entries: &[i64]) -> Self {
        assert!(!entries.is_empty(), "vector length must be positive");
        Vector(entries.iter().map(|&v| int(v)).collect())
    }

    pub fn dot(&self, other: &Self) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Vector(self.0.iter().map(|e| e * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Vector(self.0.iter().map(|e| -e).collect())
    }

    /// Scales so that the first nonzero entry is `+1`. Zero vectors are
    /// returned unchanged.
    pub fn normalize_leading(&self) -> Self {
        match self.0.iter().find(|e| !e.is_zero()) {
            Some(lead) => {
                let inv = lead.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Positive multiple with coprime integer entries.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, e| num_integer::lcm(acc, e.denom().clone()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|e| (e * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |acc, e| num_integer::gcd(acc, e.clone()));
        if g.is_zero() {
            ints
        } else {
            ints.into_iter().map(|e| e / &g).collect()
        }
    }
}

impl Vector<f64> {
    pub fn from_f64(entries: &[f64]) -> Self {
        assert!(!entries.is_empty(), "vector length must be positive");
        Vector(entries.to_vec())
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<'a, T> IntoIterator for &'a Vector<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl<T: fmt::Display> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Row-major rectangular matrix. A matrix may have zero rows (the span of an
/// empty family), but always has a known positive column count.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: Vec<Vector<T>>,
    cols: usize,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vector<T>>, cols: usize) -> Result<Self> {
        if cols == 0 {
            return Err(Error::EmptyVector);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { rows, cols })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| Vector::unit(n, i)).collect();
        Self { rows, cols: n }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![Vector::zeros(cols); rows],
            cols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vector<T>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Vector<T> {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i].0[j]
    }

    /// Sub-matrix made of the listed rows, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self {
            rows: idx.iter().map(|&i| self.rows[i].clone()).collect(),
            cols: self.cols,
        }
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.cols)
            .map(|j| Vector(self.rows.iter().map(|r| r.0[j].clone()).collect()))
            .collect();
        Self {
            rows,
            cols: self.rows.len().max(1),
        }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        Matrix {
            rows: self.rows.iter().map(Vector::to_f64).collect(),
            cols: self.cols,
        }
    }

    pub(crate) fn to_nalgebra(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.nrows(), self.cols, |i, j| self.get(i, j).to_f64())
    }
}

impl Matrix<Rational> {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(1, |r| r.len());
        let rows = rows.iter().map(|r| Vector::from_ints(r)).collect();
        Self::from_rows(rows, cols).expect("rectangular integer matrix")
    }

    pub fn mul_vec(&self, v: &Vector<Rational>) -> Vector<Rational> {
        Vector(self.rows.iter().map(|r| r.dot(v)).collect())
    }
}

impl Matrix<f64> {
    pub fn from_f64_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(1, |r| r.len());
        let rows = rows.iter().map(|r| Vector::from_f64(r)).collect();
        Self::from_rows(rows, cols).expect("rectangular float matrix")
    }

    pub fn mul_vec(&self, v: &Vector<f64>) -> Vector<f64> {
        Vector(self.rows.iter().map(|r| r.dot(v)).collect())
    }
}
