use crate::error::{Error, Result};
use crate::linalg::{Rational, Scalar, Vector};

/// Relation between two vectors on their common support.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeakPhaseRelation {
    /// There is `theta` in `{+1, -1}` with `sgn(a_i) = theta * sgn(b_i)`
    /// wherever both entries are nonzero. Vacuous overlaps report `+1`.
    WeaklySamePhase { theta: i8 },
    /// Coordinates `first < second` (0-based) with
    /// `sgn(a_first a_second) != sgn(b_first b_second)`.
    NotWeaklyRelated { first: usize, second: usize },
}

impl WeakPhaseRelation {
    pub fn is_related(&self) -> bool {
        matches!(self, WeakPhaseRelation::WeaklySamePhase { .. })
    }
}

/// Decides whether `x` and `y` weakly have the same (or opposite) phase.
pub fn weakly_same_phase<T: Scalar>(x: &Vector<T>, y: &Vector<T>) -> Result<WeakPhaseRelation> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    let mut reference: Option<(usize, i8)> = None;
    for i in 0..x.len() {
        let s = x[i].sign() * y[i].sign();
        if s == 0 {
            continue;
        }
        match reference {
            None => reference = Some((i, s)),
            Some((first, r)) if r != s => {
                return Ok(WeakPhaseRelation::NotWeaklyRelated { first, second: i })
            }
            Some(_) => {}
        }
    }
    Ok(WeakPhaseRelation::WeaklySamePhase {
        theta: reference.map_or(1, |(_, s)| s),
    })
}

/// Checks one instance of the implication: orthogonal vectors with a common
/// nonzero coordinate are never weakly phase related. Returns `true` when the
/// implication holds for this pair (including when its hypothesis fails).
pub fn verify_t70(x: &Vector<Rational>, y: &Vector<Rational>) -> bool {
    if x.len() != y.len() {
        return true;
    }
    let common = (0..x.len()).any(|i| x[i].sign() != 0 && y[i].sign() != 0);
    let orthogonal = x.dot(y).sign() == 0;
    if !(common && orthogonal) {
        return true;
    }
    matches!(
        weakly_same_phase(x, y),
        Ok(WeakPhaseRelation::NotWeaklyRelated { .. })
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: &[i64]) -> Vector<Rational> {
        Vector::from_ints(e)
    }

    #[test]
    fn relation_examples() {
        assert_eq!(
            weakly_same_phase(&v(&[1, 1]), &v(&[1, -1])).unwrap(),
            WeakPhaseRelation::NotWeaklyRelated { first: 0, second: 1 }
        );
        assert_eq!(
            weakly_same_phase(&v(&[1, 0, 0]), &v(&[0, 1, 0])).unwrap(),
            WeakPhaseRelation::WeaklySamePhase { theta: 1 }
        );
        assert_eq!(
            weakly_same_phase(&v(&[0, 0]), &v(&[5, -7])).unwrap(),
            WeakPhaseRelation::WeaklySamePhase { theta: 1 }
        );
        assert_eq!(
            weakly_same_phase(&v(&[2, -3, 0]), &v(&[-1, 4, 9])).unwrap(),
            WeakPhaseRelation::WeaklySamePhase { theta: -1 }
        );
        assert_eq!(
            weakly_same_phase(&v(&[1, 2]), &v(&[1, 2, 3])),
            Err(Error::LengthMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn float_backend_agrees() {
        let x = Vector::from_f64(&[0.5, -1.0, 0.0]);
        let y = Vector::from_f64(&[2.0, 1.0, 3.0]);
        assert_eq!(
            weakly_same_phase(&x, &y).unwrap(),
            WeakPhaseRelation::NotWeaklyRelated { first: 0, second: 1 }
        );
    }

    #[test]
    fn orthogonal_overlap_examples() {
        assert!(verify_t70(&v(&[1, 2]), &v(&[2, -1])));
        assert!(verify_t70(&v(&[1, 0]), &v(&[0, 1])));
        assert!(verify_t70(&v(&[1, 1]), &v(&[1, 1])));
    }
}
