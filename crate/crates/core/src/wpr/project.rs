//! Coordinate projections and the projected phase retrieval conditions.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::frames::{ExactFrame, Frame};
use crate::linalg::{Rational, Scalar, Vector};
use crate::spark::{check_cap, does_phase_retrieval_with, DEFAULT_ENUMERATION_CAP};
use crate::subsets::Combinations;

use super::decide::bad_partitions;

/// Restricts every vector to the coordinates in `coords` (0-based, kept in
/// the given order).
pub fn project_frame<T: Scalar>(frame: &Frame<T>, coords: &[usize]) -> Result<Frame<T>> {
    if coords.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    let n = frame.dim();
    if let Some(&index) = coords.iter().find(|&&j| j >= n) {
        return Err(Error::IndexOutOfRange { index, dim: n });
    }
    let vectors = frame
        .vectors()
        .iter()
        .map(|v| Vector::new(coords.iter().map(|&j| v[j].clone()).collect()))
        .collect::<Result<Vec<_>>>()?;
    Frame::new(vectors)
}

/// A pair of equal-measurement vectors `x != +-y` sharing a zero coordinate
/// exists for this partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedZero {
    pub subset: Vec<usize>,
    pub coordinate: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectedReport {
    /// No ambiguity pair `x != +-y` has a common zero coordinate.
    pub no_shared_zero: bool,
    pub shared_zero: Option<SharedZero>,
    /// Every projection onto `n - 1` coordinates does phase retrieval.
    pub hyperplane_projections: bool,
    pub failing_hyperplane: Option<Vec<usize>>,
    /// Every projection onto a nonempty proper coordinate subset does phase
    /// retrieval.
    pub proper_projections: bool,
    pub failing_proper: Option<Vec<usize>>,
    pub agree: bool,
    /// All frame vectors have norm one. The equivalence is stated for unit
    /// vectors; every condition above is invariant under positive rescaling,
    /// so non-unit input is evaluated as is.
    pub unit_norm: bool,
}

fn shared_zero(frame: &ExactFrame) -> Option<SharedZero> {
    let n = frame.dim();
    for part in bad_partitions(frame) {
        // A subspace meets the hyperplane e_j^perp nontrivially iff it has
        // dimension >= 2 or is a line with a zero at j.
        let meets = |basis: &[Vector<Rational>], j: usize| basis.len() >= 2 || basis[0][j].is_zero();
        if let Some(coordinate) =
            (0..n).find(|&j| meets(&part.orth_subset, j) && meets(&part.orth_complement, j))
        {
            return Some(SharedZero {
                subset: part.subset,
                coordinate,
            });
        }
    }
    None
}

fn first_failing_projection(
    frame: &ExactFrame,
    sizes: impl Iterator<Item = usize>,
    cap: usize,
) -> Result<Option<Vec<usize>>> {
    let n = frame.dim();
    for k in sizes {
        for coords in Combinations::new(n, k) {
            let p = project_frame(frame, &coords)?;
            if !does_phase_retrieval_with(&p, cap)?.is_yes() {
                return Ok(Some(coords));
            }
        }
    }
    Ok(None)
}

pub fn projected_pr_equivalence(frame: &ExactFrame) -> Result<ProjectedReport> {
    projected_pr_equivalence_with(frame, DEFAULT_ENUMERATION_CAP)
}

pub fn projected_pr_equivalence_with(frame: &ExactFrame, cap: usize) -> Result<ProjectedReport> {
    check_cap(frame.len(), cap)?;
    let n = frame.dim();
    let shared = shared_zero(frame);
    let hyper = if n >= 2 {
        first_failing_projection(frame, std::iter::once(n - 1), cap)?
    } else {
        None
    };
    let proper = first_failing_projection(frame, 1..n, cap)?;
    let (a, b, c) = (shared.is_none(), hyper.is_none(), proper.is_none());
    let unit_norm = frame.vectors().iter().all(|v| v.norm_sq() == num_traits::One::one());
    Ok(ProjectedReport {
        no_shared_zero: a,
        shared_zero: shared,
        hyperplane_projections: b,
        failing_hyperplane: hyper,
        proper_projections: c,
        failing_proper: proper,
        agree: a == b && b == c,
        unit_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signed_ones() -> ExactFrame {
        ExactFrame::from_ints(&[&[1, 1, 1], &[-1, 1, 1], &[1, -1, 1], &[1, 1, -1]])
    }

    fn mixed() -> ExactFrame {
        ExactFrame::from_ints(&[&[1, 2, 3], &[0, 1, 0], &[0, -2, 3], &[1, -2, -3]])
    }

    #[test]
    fn projections_of_mixed_frame() {
        let p = project_frame(&mixed(), &[0, 1]).unwrap();
        assert_eq!(p, ExactFrame::from_ints(&[&[1, 2], &[0, 1], &[0, -2], &[1, -2]]));
        let p = project_frame(&mixed(), &[0, 2]).unwrap();
        assert_eq!(p, ExactFrame::from_ints(&[&[1, 3], &[0, 0], &[0, 3], &[1, -3]]));
        assert_eq!(project_frame(&mixed(), &[0, 1, 2]).unwrap(), mixed());
    }

    #[test]
    fn projection_errors() {
        assert_eq!(project_frame(&mixed(), &[]), Err(Error::EmptyIndexSet));
        assert_eq!(
            project_frame(&mixed(), &[0, 3]),
            Err(Error::IndexOutOfRange { index: 3, dim: 3 })
        );
    }

    #[test]
    fn signed_ones_fails_every_condition() {
        let r = projected_pr_equivalence(&signed_ones()).unwrap();
        assert!(!r.no_shared_zero && !r.hyperplane_projections && !r.proper_projections);
        assert!(r.agree);
        assert_eq!(r.failing_hyperplane, Some(vec![0, 1]));
        let p = project_frame(&signed_ones(), &[1, 2]).unwrap();
        assert!(does_phase_retrieval_with(&p, DEFAULT_ENUMERATION_CAP).unwrap().is_no());
        assert!(r.shared_zero.is_some());
        assert!(!r.unit_norm);
    }

    #[test]
    fn canonical_plane_satisfies_every_condition() {
        let r = projected_pr_equivalence(&ExactFrame::canonical(2)).unwrap();
        assert!(r.no_shared_zero && r.hyperplane_projections && r.proper_projections);
        assert!(r.agree && r.unit_norm);
    }
}
