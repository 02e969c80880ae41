//! Exact linear algebra over the rationals.
//!
//! Rank and determinant clear denominators row by row (a positive row scale
//! changes neither the rank nor the sign pattern of the determinant's
//! vanishing) and run fraction-free Bareiss elimination on integers. The null
//! space comes from a reduced row echelon form over `Rational`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::types::{Matrix, Rational, Vector};

fn integer_rows(m: &Matrix<Rational>) -> Vec<Vec<BigInt>> {
    m.rows().iter().map(Vector::primitive_integer).collect()
}

/// Bareiss elimination in place. Returns the rank; the number of row swaps
/// is written to `swaps`.
fn bareiss(a: &mut [Vec<BigInt>], cols: usize, swaps: &mut usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            *swaps += 1;
        }
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            for j in (c + 1)..cols {
                let v = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].clone();
        r += 1;
    }
    r
}

/// Rank over the rationals.
pub fn rank(m: &Matrix<Rational>) -> usize {
    if m.nrows() == 0 {
        return 0;
    }
    let mut a = integer_rows(m);
    let mut swaps = 0;
    bareiss(&mut a, m.ncols(), &mut swaps)
}

/// Determinant of a square matrix.
pub fn determinant(m: &Matrix<Rational>) -> Rational {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "determinant of a non-square matrix");
    // det(M) = det(A) / prod(scale_i) where row i of A is scale_i * row i of M.
    let mut scale = Rational::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in m.rows() {
        let ints = row.primitive_integer();
        if let Some((k, v)) = row.iter().enumerate().find(|(_, v)| !v.is_zero()) {
            scale *= Rational::from_integer(ints[k].clone()) / v;
        }
        a.push(ints);
    }
    let mut swaps = 0;
    if bareiss(&mut a, n, &mut swaps) < n {
        return Rational::zero();
    }
    let det = Rational::from_integer(a[n - 1][n - 1].clone()) / scale;
    if swaps % 2 == 1 {
        -det
    } else {
        det
    }
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &Matrix<Rational>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let cols = m.ncols();
    let mut a: Vec<Vec<Rational>> = m.rows().iter().map(|r| r.entries().to_vec()).collect();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut().skip(c) {
            *v *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..cols {
                row[j] -= &f * &pivot_row[j];
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of `{v : M v = 0}`, one vector per free column in index order, each
/// scaled so its first nonzero entry is `+1`.
pub fn nullspace_basis(m: &Matrix<Rational>) -> Vec<Vector<Rational>> {
    let cols = m.ncols();
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![None; cols];
    for (row, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    (0..cols)
        .filter(|&f| is_pivot[f].is_none())
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = -r[row][f].clone();
            }
            Vector::new(v).expect("nonempty").normalize_leading()
        })
        .collect()
}

/// Integer square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::types::{int, ratio};

    fn pm_ones() -> Matrix<Rational> {
        Matrix::from_ints(&[&[1, 1, 1], &[-1, 1, 1], &[1, -1, 1], &[1, 1, -1]])
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&pm_ones()), 3);
        assert_eq!(rank(&Matrix::from_ints(&[&[0, 1], &[0, -2]])), 1);
        assert_eq!(rank(&Matrix::<Rational>::identity(3)), 3);
        assert_eq!(rank(&Matrix::<Rational>::zeros(2, 3)), 0);
        let empty = Matrix::<Rational>::from_rows(vec![], 3).unwrap();
        assert_eq!(rank(&empty), 0);
    }

    #[test]
    fn rank_with_rationals_and_skipped_columns() {
        let m = Matrix::from_rows(
            vec![
                Vector::new(vec![int(0), ratio(1, 2), int(1)]).unwrap(),
                Vector::new(vec![int(0), ratio(1, 3), ratio(2, 3)]).unwrap(),
                Vector::new(vec![int(0), int(0), int(5)]).unwrap(),
            ],
            3,
        )
        .unwrap();
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn determinant_values() {
        assert_eq!(determinant(&pm_ones().select_rows(&[0, 1, 2])), int(4));
        let m = Matrix::from_rows(
            vec![
                Vector::new(vec![ratio(1, 2), int(1)]).unwrap(),
                Vector::new(vec![int(3), ratio(-1, 3)]).unwrap(),
            ],
            2,
        )
        .unwrap();
        // 1/2 * -1/3 - 3 = -19/6
        assert_eq!(determinant(&m), ratio(-19, 6));
        let swapped = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&swapped), int(-1));
        assert_eq!(determinant(&Matrix::from_ints(&[&[1, 2], &[2, 4]])), int(0));
    }

    #[test]
    fn nullspace_examples() {
        let ns = nullspace_basis(&pm_ones().select_rows(&[0, 1]));
        assert_eq!(ns, vec![Vector::from_ints(&[0, 1, -1])]);
        let ns = nullspace_basis(&pm_ones().select_rows(&[2, 3]));
        assert_eq!(ns, vec![Vector::from_ints(&[0, 1, 1])]);
        assert!(nullspace_basis(&Matrix::<Rational>::identity(2)).is_empty());
        let empty = Matrix::<Rational>::from_rows(vec![], 2).unwrap();
        assert_eq!(
            nullspace_basis(&empty),
            vec![Vector::from_ints(&[1, 0]), Vector::from_ints(&[0, 1])]
        );
    }

    #[test]
    fn nullspace_leading_entry_is_one() {
        let m = Matrix::from_ints(&[&[2, 4, -6]]);
        for v in nullspace_basis(&m) {
            let lead = v.iter().find(|e| !e.is_zero()).unwrap();
            assert_eq!(lead, &int(1));
            assert!(m.mul_vec(&v).is_zero());
        }
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert_eq!(rational_sqrt(&int(0)), Some(int(0)));
    }
}
