//! Five-set classification of a pair with equal frame measurements.
//!
//! For `x, y` measured identically by a weak phase retrievable frame, the
//! coordinates split into `I1` (only `x` nonzero), `I2` (only `y` nonzero),
//! `I3` (both zero), `I4` (`x_i = a y_i`) and `I5` (`x_i = y_i / a`) for one
//! nonzero `a`. In the generic case
//! `a = (|x+y| - |x-y|) / (|x+y| + |x-y|)`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rational_sqrt, ratio_to_f64, Rational, Tolerance, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassificationCase {
    /// `x = y` or `x = -y`.
    Equal,
    /// `<x, y> = 0`: supports are disjoint and `I4 = I5 = {}`.
    Orthogonal,
    /// `|x+y| != |x-y|`, both nonzero.
    General,
}

/// The scalar `a`. Rational whenever some coordinate lands in `I4` or `I5`.
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Exact(Rational),
    /// Irrational value (only possible when `I4` and `I5` are empty).
    Approximate(f64),
}

impl Coefficient {
    pub fn to_f64(&self) -> f64 {
        match self {
            Coefficient::Exact(q) => ratio_to_f64(q),
            Coefficient::Approximate(v) => *v,
        }
    }
}

/// Index sets are 0-based and sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub case: ClassificationCase,
    pub a: Coefficient,
    pub only_x: Vec<usize>,
    pub only_y: Vec<usize>,
    pub both_zero: Vec<usize>,
    pub scaled: Vec<usize>,
    pub inverse_scaled: Vec<usize>,
}

impl Classification {
    /// The five sets in order `I1..I5`.
    pub fn sets(&self) -> [&[usize]; 5] {
        [
            &self.only_x,
            &self.only_y,
            &self.both_zero,
            &self.scaled,
            &self.inverse_scaled,
        ]
    }

    /// Checks every defining condition against `x` and `y` exactly. Requires
    /// an exact coefficient whenever `I4` or `I5` is nonempty.
    pub fn reproduces(&self, x: &Vector<Rational>, y: &Vector<Rational>) -> bool {
        let n = x.len();
        let mut seen = vec![false; n];
        for set in self.sets() {
            for &i in set {
                if i >= n || seen[i] {
                    return false;
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return false;
        }
        let zero = |q: &Rational| q.is_zero();
        let a = match &self.a {
            Coefficient::Exact(a) if !a.is_zero() => Some(a),
            Coefficient::Exact(_) => return false,
            Coefficient::Approximate(_) => None,
        };
        self.only_x.iter().all(|&i| !zero(&x[i]) && zero(&y[i]))
            && self.only_y.iter().all(|&i| zero(&x[i]) && !zero(&y[i]))
            && self.both_zero.iter().all(|&i| zero(&x[i]) && zero(&y[i]))
            && self
                .scaled
                .iter()
                .all(|&i| a.is_some_and(|a| x[i] == a * &y[i]))
            && self
                .inverse_scaled
                .iter()
                .all(|&i| a.is_some_and(|a| &x[i] * a == y[i]))
    }
}

fn split_zero_pattern(x: &Vector<Rational>, y: &Vector<Rational>) -> (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>) {
    let (mut only_x, mut only_y, mut both_zero, mut both) = (vec![], vec![], vec![], vec![]);
    for i in 0..x.len() {
        match (x[i].is_zero(), y[i].is_zero()) {
            (false, true) => only_x.push(i),
            (true, false) => only_y.push(i),
            (true, true) => both_zero.push(i),
            (false, false) => both.push(i),
        }
    }
    (only_x, only_y, both_zero, both)
}

pub fn classify_pair(x: &Vector<Rational>, y: &Vector<Rational>) -> Result<Classification> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    let (only_x, only_y, both_zero, both) = split_zero_pattern(x, y);

    if x == y || *x == y.neg() {
        let a = if x == y { Rational::one() } else { -Rational::one() };
        let mut both_zero = both_zero;
        both_zero.sort_unstable();
        return Ok(Classification {
            case: ClassificationCase::Equal,
            a: Coefficient::Exact(a),
            only_x: vec![],
            only_y: vec![],
            both_zero,
            scaled: both,
            inverse_scaled: vec![],
        });
    }

    let plus = x.add(y).norm_sq();
    let minus = x.sub(y).norm_sq();
    if plus == minus {
        if let Some(&coordinate) = both.first() {
            return Err(Error::NotClassifiable { coordinate });
        }
        return Ok(Classification {
            case: ClassificationCase::Orthogonal,
            a: Coefficient::Exact(Rational::one()),
            only_x,
            only_y,
            both_zero,
            scaled: vec![],
            inverse_scaled: vec![],
        });
    }

    // a = (r - 1) / (r + 1) with r = |x+y| / |x-y|.
    let a = match rational_sqrt(&(&plus / &minus)) {
        Some(r) => Coefficient::Exact((&r - Rational::one()) / (&r + Rational::one())),
        None => {
            if let Some(&coordinate) = both.first() {
                return Err(Error::NotClassifiable { coordinate });
            }
            let r = (ratio_to_f64(&plus) / ratio_to_f64(&minus)).sqrt();
            Coefficient::Approximate((r - 1.0) / (r + 1.0))
        }
    };
    let (mut scaled, mut inverse_scaled) = (vec![], vec![]);
    if let Coefficient::Exact(a) = &a {
        for &i in &both {
            if x[i] == a * &y[i] {
                scaled.push(i);
            } else if &x[i] * a == y[i] {
                inverse_scaled.push(i);
            } else {
                return Err(Error::NotClassifiable { coordinate: i });
            }
        }
    }
    Ok(Classification {
        case: ClassificationCase::General,
        a,
        only_x,
        only_y,
        both_zero,
        scaled,
        inverse_scaled,
    })
}

/// Float classification: zero tests and ratio matches use `tol` relative to
/// the largest entry magnitude.
pub fn classify_pair_f64(x: &Vector<f64>, y: &Vector<f64>, tol: Tolerance) -> Result<Classification> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    let n = x.len();
    let scale = x.iter().chain(y.iter()).fold(0.0_f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let eps = tol.0 * scale;
    let zero = |v: f64| v.abs() <= eps;
    let (mut only_x, mut only_y, mut both_zero, mut both) = (vec![], vec![], vec![], vec![]);
    for i in 0..n {
        match (zero(x[i]), zero(y[i])) {
            (false, true) => only_x.push(i),
            (true, false) => only_y.push(i),
            (true, true) => both_zero.push(i),
            (false, false) => both.push(i),
        }
    }
    let equal = (0..n).all(|i| (x[i] - y[i]).abs() <= eps);
    let opposite = (0..n).all(|i| (x[i] + y[i]).abs() <= eps);
    if equal || opposite {
        return Ok(Classification {
            case: ClassificationCase::Equal,
            a: Coefficient::Approximate(if equal { 1.0 } else { -1.0 }),
            only_x: vec![],
            only_y: vec![],
            both_zero,
            scaled: both,
            inverse_scaled: vec![],
        });
    }
    let plus: f64 = (0..n).map(|i| (x[i] + y[i]).powi(2)).sum::<f64>().sqrt();
    let minus: f64 = (0..n).map(|i| (x[i] - y[i]).powi(2)).sum::<f64>().sqrt();
    if (plus - minus).abs() <= tol.0 * plus.max(minus) {
        if let Some(&coordinate) = both.first() {
            return Err(Error::NotClassifiable { coordinate });
        }
        return Ok(Classification {
            case: ClassificationCase::Orthogonal,
            a: Coefficient::Approximate(1.0),
            only_x,
            only_y,
            both_zero,
            scaled: vec![],
            inverse_scaled: vec![],
        });
    }
    let a = (1.0 / minus - 1.0 / plus) / (1.0 / plus + 1.0 / minus);
    let (mut scaled, mut inverse_scaled) = (vec![], vec![]);
    for &i in &both {
        if (x[i] - a * y[i]).abs() <= eps {
            scaled.push(i);
        } else if (a * x[i] - y[i]).abs() <= eps {
            inverse_scaled.push(i);
        } else {
            return Err(Error::NotClassifiable { coordinate: i });
        }
    }
    Ok(Classification {
        case: ClassificationCase::General,
        a: Coefficient::Approximate(a),
        only_x,
        only_y,
        both_zero,
        scaled,
        inverse_scaled,
    })
}

impl Coefficient {
    pub fn is_negative(&self) -> bool {
        match self {
            Coefficient::Exact(q) => q.is_negative(),
            Coefficient::Approximate(v) => *v < 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, ratio};

    fn v(e: &[i64]) -> Vector<Rational> {
        Vector::from_ints(e)
    }

    #[test]
    fn disjoint_unit_vectors() {
        let c = classify_pair(&v(&[1, 0, 0]), &v(&[0, 1, 0])).unwrap();
        assert_eq!(c.case, ClassificationCase::Orthogonal);
        assert_eq!(c.only_x, vec![0]);
        assert_eq!(c.only_y, vec![1]);
        assert_eq!(c.both_zero, vec![2]);
        assert!(c.scaled.is_empty() && c.inverse_scaled.is_empty());
        assert!(c.reproduces(&v(&[1, 0, 0]), &v(&[0, 1, 0])));
    }

    #[test]
    fn two_thirds_example() {
        let (x, y) = (v(&[2, 3, 0]), v(&[3, 2, 0]));
        let c = classify_pair(&x, &y).unwrap();
        assert_eq!(c.case, ClassificationCase::General);
        assert_eq!(c.a, Coefficient::Exact(ratio(2, 3)));
        assert_eq!(c.both_zero, vec![2]);
        assert_eq!(c.scaled, vec![0]);
        assert_eq!(c.inverse_scaled, vec![1]);
        assert!(c.reproduces(&x, &y));
    }

    #[test]
    fn identical_pair() {
        let c = classify_pair(&v(&[5, -1]), &v(&[5, -1])).unwrap();
        assert_eq!(c.case, ClassificationCase::Equal);
        assert_eq!(c.a, Coefficient::Exact(int(1)));
        assert_eq!(c.scaled, vec![0, 1]);
        let c = classify_pair(&v(&[5, 0]), &v(&[-5, 0])).unwrap();
        assert_eq!(c.a, Coefficient::Exact(int(-1)));
        assert!(c.reproduces(&v(&[5, 0]), &v(&[-5, 0])));
    }

    #[test]
    fn orthogonal_with_common_support_is_rejected() {
        assert_eq!(
            classify_pair(&v(&[1, 2]), &v(&[2, -1])),
            Err(Error::NotClassifiable { coordinate: 0 })
        );
    }

    #[test]
    fn irrational_coefficient_with_empty_ratio_sets() {
        // |x+y|^2 = 6, |x-y|^2 = 2: r = sqrt 3.
        let (x, y) = (v(&[1, 1, 0]), v(&[0, 1, 0]).add(&v(&[0, 0, 0])));
        let c = classify_pair(&x, &y);
        // x and y share coordinate 1, so an irrational a cannot classify it.
        assert_eq!(c, Err(Error::NotClassifiable { coordinate: 1 }));
        let (x, y) = (v(&[1, 1, 0]), v(&[0, 0, 1]));
        let c = classify_pair(&x, &y).unwrap();
        assert_eq!(c.case, ClassificationCase::Orthogonal);
    }

    #[test]
    fn mismatched_lengths() {
        assert!(matches!(
            classify_pair(&v(&[1]), &v(&[1, 2])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn float_variant_matches_exact() {
        let x = Vector::from_f64(&[2.0, 3.0, 0.0]);
        let y = Vector::from_f64(&[3.0, 2.0, 0.0]);
        let c = classify_pair_f64(&x, &y, Tolerance::default()).unwrap();
        assert!((c.a.to_f64() - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(c.scaled, vec![0]);
        assert_eq!(c.inverse_scaled, vec![1]);
        assert_eq!(c.both_zero, vec![2]);
    }
}
