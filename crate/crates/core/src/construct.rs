//! Randomized constructions that are verified exactly before they are
//! returned, and the named example frames.

use nalgebra::DMatrix;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::decision::Outcome;
use crate::error::{Error, Result};
use crate::frames::{ExactFrame, Frame};
use crate::linalg::{determinant, nullspace_basis, rank, snap_f64, Matrix, Rational, Vector};
use crate::spark::is_full_spark;
use crate::subsets::Combinations;
use crate::wpr::{decide_wpr, weakly_same_phase};

/// Samples tried before a construction gives up.
pub const MAX_RETRIES: usize = 100;

/// Entries of sampled integer vectors lie in `-ENTRY_RANGE..=ENTRY_RANGE`.
pub const ENTRY_RANGE: i64 = 100;

/// Grid used to snap orthonormal tails to rationals.
pub const TAIL_DENOMINATOR: u64 = 1_000_000_000_000;

pub const P3_MAX_DIM: usize = 8;
pub const P3_MAX_LEN: usize = 10;

fn integer_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vector<Rational> {
    let e: Vec<i64> = (0..n).map(|_| rng.random_range(-ENTRY_RANGE..=ENTRY_RANGE)).collect();
    Vector::from_ints(&e)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FullSparkOptions {
    /// Start with `e_1, ..., e_n` and fill the remaining `m - n <= n` slots
    /// with an orthonormal family snapped to a fine rational grid.
    pub orthonormal_tail: bool,
}

pub fn generic_full_spark(m: usize, n: usize, seed: u64) -> Result<ExactFrame> {
    generic_full_spark_with(m, n, seed, FullSparkOptions::default())
}

pub fn generic_full_spark_with(m: usize, n: usize, seed: u64, opts: FullSparkOptions) -> Result<ExactFrame> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    if m < n {
        return Err(Error::TooFewVectors { needed: n, got: m });
    }
    if opts.orthonormal_tail && m - n > n {
        return Err(Error::InvalidArgument(format!(
            "an orthonormal tail holds at most n = {n} vectors, {} requested",
            m - n
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let vectors = if opts.orthonormal_tail {
            let mut v: Vec<_> = (0..n).map(|i| Vector::unit(n, i)).collect();
            v.extend(orthonormal_family(&mut rng, n, m - n));
            v
        } else {
            (0..m).map(|_| integer_vector(&mut rng, n)).collect()
        };
        let frame = Frame::new(vectors)?;
        if is_full_spark(&frame)?.is_yes() {
            return Ok(frame);
        }
    }
    Err(Error::RetryLimit(MAX_RETRIES))
}

/// `k` orthonormal vectors from the QR factor of a Gaussian matrix, snapped
/// to rationals with denominator [`TAIL_DENOMINATOR`].
fn orthonormal_family<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Vec<Vector<Rational>> {
    if k == 0 {
        return Vec::new();
    }
    let g = DMatrix::<f64>::from_fn(n, k, |_, _| rng.sample(StandardNormal));
    let q = g.qr().q();
    (0..k)
        .map(|j| {
            let e: Vec<Rational> = (0..n).map(|i| snap_f64(q[(i, j)], TAIL_DENOMINATOR)).collect();
            Vector::new(e).expect("n >= 1")
        })
        .collect()
}

/// Restriction of each listed vector to the coordinates in `coords`.
fn restricted(vectors: &[&Vector<Rational>], coords: &[usize]) -> Matrix<Rational> {
    let rows = vectors
        .iter()
        .map(|v| Vector::new(coords.iter().map(|&j| v[j].clone()).collect()).expect("coords nonempty"))
        .collect();
    Matrix::from_rows(rows, coords.len()).expect("rows share a length")
}

fn independent(m: &Matrix<Rational>) -> bool {
    if m.nrows() == m.ncols() {
        !determinant(m).is_zero()
    } else {
        rank(m) == m.nrows()
    }
}

/// Checks the projection condition for every coordinate set and every family
/// of `min(|I|, len)` vectors that includes the vector at `newest`, or every
/// family when `newest` is `None`.
fn projections_full_spark(vectors: &[Vector<Rational>], newest: Option<usize>) -> bool {
    let (len, n) = (vectors.len(), vectors[0].len());
    for size in 1..=n {
        for coords in Combinations::new(n, size) {
            let k = size.min(len);
            for family in Combinations::new(len, k) {
                if newest.is_some_and(|i| !family.contains(&i)) {
                    continue;
                }
                let rows: Vec<&Vector<Rational>> = family.iter().map(|&i| &vectors[i]).collect();
                if !independent(&restricted(&rows, &coords)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Exhaustive check that every coordinate projection of the frame is full
/// spark in its coordinate subspace.
pub fn verify_projections_full_spark(frame: &ExactFrame) -> bool {
    projections_full_spark(frame.vectors(), None)
}

/// A frame whose projections onto every coordinate subspace are full spark.
/// The first vector is all ones; later vectors are sampled and accepted when
/// every new family they join stays independent.
pub fn p3_family(m: usize, n: usize, seed: u64) -> Result<ExactFrame> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("m and n must be positive".into()));
    }
    if n > P3_MAX_DIM || m > P3_MAX_LEN {
        return Err(Error::SizeLimit(format!(
            "projection checks are exhaustive; need n <= {P3_MAX_DIM} and m <= {P3_MAX_LEN}, got n = {n}, m = {m}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vectors = vec![Vector::from_ints(&vec![1; n])];
    while vectors.len() < m {
        let mut accepted = false;
        for _ in 0..MAX_RETRIES {
            vectors.push(integer_vector(&mut rng, n));
            if projections_full_spark(&vectors, Some(vectors.len() - 1)) {
                accepted = true;
                break;
            }
            vectors.pop();
        }
        if !accepted {
            return Err(Error::RetryLimit(MAX_RETRIES));
        }
    }
    let frame = Frame::new(vectors)?;
    debug_assert!(verify_projections_full_spark(&frame));
    Ok(frame)
}

/// `2n - 2` vectors: `n - 1` spanning `x^perp`, then `n - 1` spanning
/// `y^perp`, each side an invertible integer mix of an exact null-space
/// basis. Fails weak phase retrieval because `x + y`, `x - y` have equal
/// measurements.
pub fn failing_frame_from_pair(x: &Vector<Rational>, y: &Vector<Rational>, seed: u64) -> Result<ExactFrame> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2".into()));
    }
    if weakly_same_phase(&x.add(y), &x.sub(y))?.is_related() {
        return Err(Error::PairNotBad);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vectors = mixed_complement(&mut rng, x)?;
    vectors.extend(mixed_complement(&mut rng, y)?);
    let frame = Frame::new(vectors)?;
    let d = decide_wpr(&frame)?;
    if d.outcome != Outcome::No || !d.verify_witness(&frame) {
        return Err(Error::InvalidArgument("constructed frame did not verify".into()));
    }
    Ok(frame)
}

fn mixed_complement<R: Rng + ?Sized>(rng: &mut R, v: &Vector<Rational>) -> Result<Vec<Vector<Rational>>> {
    let n = v.len();
    let row = Matrix::from_rows(vec![v.clone()], n)?;
    let basis = nullspace_basis(&row);
    let k = basis.len();
    for _ in 0..MAX_RETRIES {
        let coeffs: Vec<Vec<i64>> = (0..k).map(|_| (0..k).map(|_| rng.random_range(-5..=5)).collect()).collect();
        let refs: Vec<&[i64]> = coeffs.iter().map(|r| r.as_slice()).collect();
        if determinant(&Matrix::from_ints(&refs)).is_zero() {
            continue;
        }
        return Ok(coeffs
            .iter()
            .map(|c| {
                c.iter()
                    .zip(&basis)
                    .fold(Vector::zeros(n), |acc, (&ci, b)| acc.add(&b.scale(&Rational::from_integer(ci.into()))))
            })
            .collect());
    }
    Err(Error::RetryLimit(MAX_RETRIES))
}

/// Decisions recorded for a named frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    pub wpr: Outcome,
    pub pr: Option<Outcome>,
    pub full_spark: Option<Outcome>,
    /// Coordinate sets (0-based) and the weak phase retrieval outcome of the
    /// projected frame.
    pub projections: Vec<(Vec<usize>, Outcome)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedFrame {
    pub name: &'static str,
    pub description: &'static str,
    pub frame: ExactFrame,
    pub expected: Expected,
}

pub fn example_registry() -> Vec<NamedFrame> {
    use Outcome::{No, Yes};
    let expected = |wpr, pr, full_spark| Expected {
        wpr,
        pr,
        full_spark,
        projections: Vec::new(),
    };
    vec![
        NamedFrame {
            name: "pm-ones-4x3",
            description: "four sign vectors in R^3; weak phase retrieval without phase retrieval",
            frame: ExactFrame::from_ints(&[&[1, 1, 1], &[-1, 1, 1], &[1, -1, 1], &[1, 1, -1]]),
            expected: expected(Yes, Some(No), Some(Yes)),
        },
        NamedFrame {
            name: "canonical-member-4x3",
            description: "full spark frame in R^3 containing e2; fails weak phase retrieval while its 2-coordinate projections succeed",
            frame: ExactFrame::from_ints(&[&[1, 2, 3], &[0, 1, 0], &[0, -2, 3], &[1, -2, -3]]),
            expected: Expected {
                projections: vec![(vec![0, 1], Yes), (vec![0, 2], Yes), (vec![1, 2], Yes)],
                ..expected(No, Some(No), Some(Yes))
            },
        },
        NamedFrame {
            name: "basis-2",
            description: "canonical basis of R^2",
            frame: ExactFrame::canonical(2),
            expected: expected(No, Some(No), Some(Yes)),
        },
        NamedFrame {
            name: "rotated-basis-2",
            description: "(1,1), (1,-1): a positive rescaling of the canonical basis rotated by 45 degrees",
            frame: ExactFrame::from_ints(&[&[1, 1], &[1, -1]]),
            expected: expected(Yes, Some(No), Some(Yes)),
        },
        NamedFrame {
            name: "basis-plus-sum-2",
            description: "e1, e2, e1 + e2 in R^2",
            frame: ExactFrame::from_ints(&[&[1, 0], &[0, 1], &[1, 1]]),
            expected: expected(Yes, Some(Yes), Some(Yes)),
        },
    ]
}

pub fn example(name: &str) -> Option<NamedFrame> {
    example_registry().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spark::does_phase_retrieval;
    use crate::wpr::project_frame;

    #[test]
    fn full_spark_examples() {
        let f = generic_full_spark(3, 2, 1).unwrap();
        assert!(is_full_spark(&f).unwrap().is_yes());
        let f = generic_full_spark(2, 2, 5).unwrap();
        assert_eq!(f.rank(), 2);
    }

    #[test]
    fn orthonormal_tail_has_no_zero_coordinate() {
        let f = generic_full_spark_with(4, 3, 9, FullSparkOptions { orthonormal_tail: true }).unwrap();
        assert_eq!(&f.vectors()[..3], ExactFrame::canonical(3).vectors());
        assert!(f.vector(3).iter().all(|e| !e.is_zero()));
        let f = generic_full_spark_with(6, 4, 2, FullSparkOptions { orthonormal_tail: true }).unwrap();
        let (a, b) = (f.vector(4).to_f64(), f.vector(5).to_f64());
        assert!(a.dot(&b).abs() < 1e-9 && (a.norm() - 1.0).abs() < 1e-9);
        assert!(generic_full_spark_with(7, 3, 0, FullSparkOptions { orthonormal_tail: true }).is_err());
    }

    #[test]
    fn p3_examples() {
        let f = p3_family(1, 4, 0).unwrap();
        assert_eq!(f, ExactFrame::from_ints(&[&[1, 1, 1, 1]]));
        let f = p3_family(3, 2, 0).unwrap();
        assert!(verify_projections_full_spark(&f));
        assert!(f.vectors().iter().all(|v| v.iter().all(|e| !e.is_zero())));
        assert!(matches!(p3_family(11, 2, 0), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn p3_check_rejects_zero_coordinates() {
        let f = ExactFrame::from_ints(&[&[1, 1], &[1, 0]]);
        assert!(!verify_projections_full_spark(&f));
    }

    #[test]
    fn failing_frames() {
        let f = failing_frame_from_pair(&Vector::from_ints(&[1, 0]), &Vector::from_ints(&[0, 1]), 0).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.vector(0)[0].is_zero() && f.vector(1)[1].is_zero());
        let (x, y) = (Vector::from_ints(&[1, 1, 0]), Vector::from_ints(&[0, 0, 1]));
        let f = failing_frame_from_pair(&x, &y, 3).unwrap();
        assert_eq!(f.len(), 4);
        assert!((0..2).all(|i| f.vector(i).dot(&x).is_zero()));
        assert!((2..4).all(|i| f.vector(i).dot(&y).is_zero()));
        let x = Vector::from_ints(&[1, 2]);
        assert_eq!(failing_frame_from_pair(&x, &x, 0), Err(Error::PairNotBad));
    }

    #[test]
    fn registry_matches_decisions() {
        for e in example_registry() {
            let f = &e.frame;
            assert_eq!(decide_wpr(f).unwrap().outcome, e.expected.wpr, "{}", e.name);
            if let Some(pr) = e.expected.pr {
                assert_eq!(does_phase_retrieval(f).unwrap().outcome, pr, "{}", e.name);
            }
            if let Some(fs) = e.expected.full_spark {
                assert_eq!(is_full_spark(f).unwrap().outcome, fs, "{}", e.name);
            }
            for (coords, outcome) in &e.expected.projections {
                let p = project_frame(f, coords).unwrap();
                assert_eq!(decide_wpr(&p).unwrap().outcome, *outcome, "{} {coords:?}", e.name);
            }
        }
        assert!(example("basis-2").is_some() && example("nope").is_none());
    }
}
