//! Three-valued decisions and the certificates that back them.

use std::fmt;

use num_traits::Zero;

use crate::frames::ExactFrame;
use crate::linalg::{rank, Rational, Vector};
use crate::subsets::complement;
use crate::wpr::{weakly_same_phase, WeakPhaseRelation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Yes,
    No,
    /// Reserved for procedures that cannot certify either way. The current
    /// exact procedures always reach `Yes` or `No`.
    Undecided,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Yes => "yes",
            Outcome::No => "no",
            Outcome::Undecided => "undecided",
        })
    }
}

/// The criterion a decision was reached by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Every `n`-subset tested by an exact determinant.
    SpanningSubsets,
    /// Complement property checked over every partition.
    ComplementEnumeration,
    /// Fewer than `2n - 1` vectors cannot do phase retrieval.
    BelowPhaseRetrievalBound,
    /// At exactly `2n - 1` vectors, phase retrieval is equivalent to full spark.
    FullSparkEquivalence,
    /// Fewer than `2n - 2` vectors cannot do weak phase retrieval.
    BelowWeakBound,
    /// At `2n - 2` vectors, weak phase retrieval forces full spark.
    NotFullSparkAtWeakBound,
    /// At `2n - 2` vectors, a nonzero multiple of a canonical basis vector
    /// (the 0-based coordinate is recorded) rules out weak phase retrieval.
    CanonicalVectorAtWeakBound { coordinate: usize },
    /// Scan of all non-spanning partitions with one-dimensional complements:
    /// unit generators `a`, `b` must make `a + b` and `a - b` disjointly
    /// supported.
    DisjointSupportScan,
    /// A non-spanning partition whose complements are not both lines always
    /// yields a pair that is not weakly phase related.
    HighDimensionalComplement,
}

impl Rule {
    pub fn code(&self) -> &'static str {
        match self {
            Rule::SpanningSubsets => "spanning-subsets",
            Rule::ComplementEnumeration => "complement-enumeration",
            Rule::BelowPhaseRetrievalBound => "below-2n-1",
            Rule::FullSparkEquivalence => "full-spark-equivalence",
            Rule::BelowWeakBound => "below-2n-2",
            Rule::NotFullSparkAtWeakBound => "not-full-spark-at-2n-2",
            Rule::CanonicalVectorAtWeakBound { .. } => "canonical-vector-at-2n-2",
            Rule::DisjointSupportScan => "disjoint-support-scan",
            Rule::HighDimensionalComplement => "high-dimensional-complement",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::SpanningSubsets => write!(f, "every n-subset is linearly independent iff full spark"),
            Rule::ComplementEnumeration => {
                write!(f, "phase retrieval iff every partition has a spanning side")
            }
            Rule::BelowPhaseRetrievalBound => write!(f, "phase retrieval needs m >= 2n-1"),
            Rule::FullSparkEquivalence => write!(f, "at m = 2n-1, phase retrieval iff full spark"),
            Rule::BelowWeakBound => write!(f, "weak phase retrieval needs m >= 2n-2"),
            Rule::NotFullSparkAtWeakBound => {
                write!(f, "at m = 2n-2, weak phase retrieval requires full spark")
            }
            Rule::CanonicalVectorAtWeakBound { coordinate } => write!(
                f,
                "at m = 2n-2, a frame containing a multiple of e{} cannot do weak phase retrieval",
                coordinate + 1
            ),
            Rule::DisjointSupportScan => write!(
                f,
                "unit complement generators a, b must give disjointly supported a+b and a-b"
            ),
            Rule::HighDimensionalComplement => write!(
                f,
                "a non-spanning partition with a complement of dimension >= 2 admits a non-phase-related pair"
            ),
        }
    }
}

/// A subset `I` of the frame indices such that neither `{x_i : i in I}` nor
/// its complement spans. Indices are 0-based and sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionWitness {
    pub subset: Vec<usize>,
    pub rank_subset: usize,
    pub rank_complement: usize,
    /// Basis of the orthogonal complement of the span of the subset.
    pub null_subset: Vec<Vector<Rational>>,
    /// Basis of the orthogonal complement of the span of the other side.
    pub null_complement: Vec<Vector<Rational>>,
}

impl PartitionWitness {
    pub fn complement(&self, m: usize) -> Vec<usize> {
        complement(&self.subset, m)
    }

    /// Recomputes ranks and checks the orthogonality claims exactly.
    pub fn verify(&self, frame: &ExactFrame) -> bool {
        let n = frame.dim();
        let other = self.complement(frame.len());
        let ranks_ok = rank(&frame.rows(&self.subset)) == self.rank_subset
            && rank(&frame.rows(&other)) == self.rank_complement
            && self.rank_subset < n
            && self.rank_complement < n;
        let orthogonal = |basis: &[Vector<Rational>], side: &[usize]| {
            !basis.is_empty()
                && basis.iter().all(|v| {
                    !v.is_zero() && side.iter().all(|&i| frame.vector(i).dot(v).is_zero())
                })
        };
        ranks_ok
            && orthogonal(&self.null_subset, &self.subset)
            && orthogonal(&self.null_complement, &other)
    }
}

/// Two vectors with `|<x, x_i>| = |<y, x_i>|` for every frame vector.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbiguityPair {
    pub x: Vector<Rational>,
    pub y: Vector<Rational>,
    /// Indices `i` with `<x, x_i> = -<y, x_i> != 0`, i.e. where `x + y` is
    /// orthogonal to `x_i` but `x - y` is not.
    pub partition: Vec<usize>,
    /// Per frame vector: `+1` when `<x, x_i> = <y, x_i>`, `-1` when
    /// `<x, x_i> = -<y, x_i> != 0`.
    pub signs: Vec<i8>,
}

impl AmbiguityPair {
    /// Builds the pair and its sign pattern; `None` if some measurement
    /// magnitudes differ.
    pub fn new(frame: &ExactFrame, x: Vector<Rational>, y: Vector<Rational>) -> Option<Self> {
        let mut signs = Vec::with_capacity(frame.len());
        for v in frame.vectors() {
            let (a, b) = (x.dot(v), y.dot(v));
            if a == b {
                signs.push(1);
            } else if a == -b {
                signs.push(-1);
            } else {
                return None;
            }
        }
        let partition = (0..signs.len()).filter(|&i| signs[i] < 0).collect();
        Some(Self {
            x,
            y,
            partition,
            signs,
        })
    }

    /// Measurement magnitudes agree and the recorded sign pattern matches.
    pub fn verify(&self, frame: &ExactFrame) -> bool {
        AmbiguityPair::new(frame, self.x.clone(), self.y.clone())
            .is_some_and(|p| p.signs == self.signs)
    }

    /// The pair witnesses failure of weak phase retrieval.
    pub fn is_counterexample(&self, frame: &ExactFrame) -> bool {
        self.verify(frame)
            && matches!(
                weakly_same_phase(&self.x, &self.y),
                Ok(WeakPhaseRelation::NotWeaklyRelated { .. })
            )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// An `n`-subset that is linearly dependent.
    DependentSubset(Vec<usize>),
    Partition(PartitionWitness),
    Ambiguity(AmbiguityPair),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decision {
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    pub rule: Rule,
}

impl Decision {
    pub fn yes(rule: Rule) -> Self {
        Self {
            outcome: Outcome::Yes,
            witness: None,
            rule,
        }
    }

    pub fn no(rule: Rule, witness: Witness) -> Self {
        Self {
            outcome: Outcome::No,
            witness: Some(witness),
            rule,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.outcome == Outcome::Yes
    }

    pub fn is_no(&self) -> bool {
        self.outcome == Outcome::No
    }

    /// Re-checks the attached witness against the frame. Decisions without a
    /// witness verify trivially.
    pub fn verify_witness(&self, frame: &ExactFrame) -> bool {
        match &self.witness {
            None => self.outcome != Outcome::No,
            Some(Witness::DependentSubset(s)) => {
                s.len() == frame.dim() && rank(&frame.rows(s)) < frame.dim()
            }
            Some(Witness::Partition(p)) => p.verify(frame),
            Some(Witness::Ambiguity(p)) => p.is_counterexample(frame),
        }
    }
}
