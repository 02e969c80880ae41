//! Full spark, complement property and phase retrieval, decided exactly.

use crate::decision::{Decision, PartitionWitness, Rule, Witness};
use crate::error::{Error, Result};
use crate::frames::ExactFrame;
use crate::linalg::{determinant, nullspace_basis, rank};
use crate::subsets::{complement, mask_members, Combinations};

/// Largest frame accepted by the partition enumerations.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

pub(crate) fn check_cap(m: usize, cap: usize) -> Result<()> {
    if m > cap {
        return Err(Error::SizeLimit(format!(
            "partition enumeration over {m} vectors exceeds the cap of {cap}"
        )));
    }
    Ok(())
}

/// Orthogonal complement data for one side of a partition.
pub(crate) struct Side {
    pub rank: usize,
    pub null: Vec<crate::linalg::Vector<crate::linalg::Rational>>,
}

pub(crate) fn side(frame: &ExactFrame, idx: &[usize]) -> Side {
    let m = frame.rows(idx);
    let null = nullspace_basis(&m);
    Side {
        rank: frame.dim() - null.len(),
        null,
    }
}

/// Partition witness for `subset` if neither side spans.
pub fn partition_witness(frame: &ExactFrame, subset: &[usize]) -> Option<PartitionWitness> {
    let other = complement(subset, frame.len());
    let a = side(frame, subset);
    if a.null.is_empty() {
        return None;
    }
    let b = side(frame, &other);
    if b.null.is_empty() {
        return None;
    }
    Some(PartitionWitness {
        subset: subset.to_vec(),
        rank_subset: a.rank,
        rank_complement: b.rank,
        null_subset: a.null,
        null_complement: b.null,
    })
}

/// First `n`-subset (lexicographic) whose vectors are dependent.
pub fn first_dependent_subset(frame: &ExactFrame) -> Option<Vec<usize>> {
    let n = frame.dim();
    Combinations::new(frame.len(), n).find(|s| determinant(&frame.rows(s)) == num_traits::Zero::zero())
}

pub fn is_full_spark(frame: &ExactFrame) -> Result<Decision> {
    let (m, n) = (frame.len(), frame.dim());
    if m < n {
        return Err(Error::TooFewVectors { needed: n, got: m });
    }
    Ok(match first_dependent_subset(frame) {
        None => Decision::yes(Rule::SpanningSubsets),
        Some(s) => Decision::no(Rule::SpanningSubsets, Witness::DependentSubset(s)),
    })
}

pub fn complement_property(frame: &ExactFrame) -> Result<Decision> {
    complement_property_with(frame, DEFAULT_ENUMERATION_CAP)
}

/// Checks every unordered partition once, with `I` the side not containing
/// the last vector, in increasing bitmask order. The first violating `I` is
/// returned as the witness.
pub fn complement_property_with(frame: &ExactFrame, cap: usize) -> Result<Decision> {
    let m = frame.len();
    check_cap(m, cap)?;
    let n = frame.dim();
    for mask in 0..(1u64 << (m - 1)) {
        let subset = mask_members(mask, m);
        // Cheap rank screens before computing null spaces.
        if subset.len() >= n && rank(&frame.rows(&subset)) == n {
            continue;
        }
        let other = complement(&subset, m);
        if other.len() >= n && rank(&frame.rows(&other)) == n {
            continue;
        }
        let w = partition_witness(frame, &subset).expect("both sides are non-spanning");
        return Ok(Decision::no(Rule::ComplementEnumeration, Witness::Partition(w)));
    }
    Ok(Decision::yes(Rule::ComplementEnumeration))
}

pub fn does_phase_retrieval(frame: &ExactFrame) -> Result<Decision> {
    does_phase_retrieval_with(frame, DEFAULT_ENUMERATION_CAP)
}

/// Phase retrieval via the complement property, with two shortcuts: fewer
/// than `2n - 1` vectors always fail, and exactly `2n - 1` vectors succeed
/// iff the frame is full spark.
pub fn does_phase_retrieval_with(frame: &ExactFrame, cap: usize) -> Result<Decision> {
    let (m, n) = (frame.len(), frame.dim());
    if m < 2 * n - 1 {
        // The first n-1 vectors and the remaining m-n+1 <= n-1 both fall short.
        let subset: Vec<usize> = (0..m.min(n - 1)).collect();
        let w = partition_witness(frame, &subset).expect("both sides have fewer than n vectors");
        return Ok(Decision::no(Rule::BelowPhaseRetrievalBound, Witness::Partition(w)));
    }
    if m == 2 * n - 1 {
        return Ok(match first_dependent_subset(frame) {
            None => Decision::yes(Rule::FullSparkEquivalence),
            Some(s) => {
                let w = partition_witness(frame, &s)
                    .expect("dependent n-subset and its (n-1)-element complement");
                Decision::no(Rule::FullSparkEquivalence, Witness::Partition(w))
            }
        });
    }
    complement_property_with(frame, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decision::Outcome;

    fn signed_ones() -> ExactFrame {
        ExactFrame::from_ints(&[&[1, 1, 1], &[-1, 1, 1], &[1, -1, 1], &[1, 1, -1]])
    }

    #[test]
    fn full_spark_examples() {
        let f = ExactFrame::from_ints(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(is_full_spark(&f).unwrap().is_yes());
        assert!(is_full_spark(&signed_ones()).unwrap().is_yes());
        let d = is_full_spark(&ExactFrame::from_ints(&[&[1, 0], &[0, 1], &[1, 0]])).unwrap();
        assert_eq!(d.outcome, Outcome::No);
        assert_eq!(d.witness, Some(Witness::DependentSubset(vec![0, 2])));
        assert_eq!(
            is_full_spark(&ExactFrame::from_ints(&[&[1, 0, 0]])),
            Err(Error::TooFewVectors { needed: 3, got: 1 })
        );
    }

    #[test]
    fn zero_vector_breaks_full_spark() {
        let f = ExactFrame::from_ints(&[&[1, 0], &[0, 0], &[1, 1]]);
        let d = is_full_spark(&f).unwrap();
        assert_eq!(d.witness, Some(Witness::DependentSubset(vec![0, 1])));
    }

    #[test]
    fn complement_property_examples() {
        let d = complement_property(&ExactFrame::canonical(2)).unwrap();
        assert!(d.is_no());
        match &d.witness {
            Some(Witness::Partition(w)) => assert_eq!(w.subset, vec![0]),
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(d.verify_witness(&ExactFrame::canonical(2)));
        let f = ExactFrame::from_ints(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(complement_property(&f).unwrap().is_yes());
        let f = ExactFrame::from_ints(&[&[1, 2], &[0, 1], &[0, -2], &[1, -2]]);
        assert!(complement_property(&f).unwrap().is_yes());
    }

    #[test]
    fn complement_property_cap() {
        let rows: Vec<Vec<i64>> = (0..25).map(|i| vec![1, i]).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let f = ExactFrame::from_ints(&refs);
        assert!(matches!(complement_property(&f), Err(Error::SizeLimit(_))));
        // The full-spark shortcut does not enumerate, but m > 2n-1 here.
        assert!(matches!(does_phase_retrieval(&f), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn phase_retrieval_examples() {
        let d = does_phase_retrieval(&signed_ones()).unwrap();
        assert_eq!(d.rule, Rule::BelowPhaseRetrievalBound);
        assert!(d.is_no() && d.verify_witness(&signed_ones()));
        let f = ExactFrame::from_ints(&[&[1, 0], &[0, 1], &[1, 1]]);
        let d = does_phase_retrieval(&f).unwrap();
        assert_eq!((d.outcome, d.rule), (Outcome::Yes, Rule::FullSparkEquivalence));
        let f = ExactFrame::from_ints(&[&[1, 0], &[0, 1], &[2, 0]]);
        let d = does_phase_retrieval(&f).unwrap();
        assert!(d.is_no() && d.verify_witness(&f));
    }

    #[test]
    fn five_vectors_in_r3() {
        let f = ExactFrame::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3]]);
        assert!(is_full_spark(&f).unwrap().is_yes());
        assert!(does_phase_retrieval(&f).unwrap().is_yes());
        assert!(complement_property(&f).unwrap().is_yes());
    }
}
