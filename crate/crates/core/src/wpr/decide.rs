//! Exact decision procedure for weak phase retrieval.
//!
//! Every ambiguity pair `(x, y)` of a frame comes from a partition `I | I^c`:
//! `x - y` is orthogonal to the vectors indexed by `I` and `x + y` to those
//! indexed by `I^c`. Only partitions where neither side spans matter. Writing
//! `u` for a vector orthogonal to side `I` and `v` for one orthogonal to side
//! `I^c`, the pairs are `u + s v`, `u - s v` up to scale, and
//! `(u_i + s v_i)(u_i - s v_i) = u_i^2 - s^2 v_i^2`. The pair is weakly phase
//! related for every `s` exactly when `|u|` and `|v|` are proportional
//! coordinatewise, which for unit `u`, `v` says `u + v` and `u - v` are
//! disjointly supported. If either complement has dimension at least two,
//! proportionality fails for all but finitely many lines, so a bad line can
//! always be found by trying `2^(n-1) + 1` distinct combinations.

use num_traits::{One, Zero};

use crate::decision::{AmbiguityPair, Decision, Outcome, Rule, Witness};
use crate::error::Result;
use crate::frames::ExactFrame;
use crate::linalg::{ratio, rational_sqrt, Rational, Vector};
use crate::spark::{check_cap, first_dependent_subset, side, DEFAULT_ENUMERATION_CAP};
use crate::subsets::{complement, mask_members};

use super::phase::{weakly_same_phase, WeakPhaseRelation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WprConfig {
    /// Largest frame accepted by the partition scan.
    pub enumeration_cap: usize,
}

impl Default for WprConfig {
    fn default() -> Self {
        Self {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

/// A partition `I | I^c` where neither side spans.
#[derive(Clone, Debug)]
pub struct BadPartition {
    pub subset: Vec<usize>,
    /// Basis of the vectors orthogonal to side `I`.
    pub orth_subset: Vec<Vector<Rational>>,
    /// Basis of the vectors orthogonal to side `I^c`.
    pub orth_complement: Vec<Vector<Rational>>,
}

impl BadPartition {
    pub fn is_line_pair(&self) -> bool {
        self.orth_subset.len() == 1 && self.orth_complement.len() == 1
    }
}

/// All non-spanning partitions, each unordered partition once with `I` the
/// side not containing the last vector, in increasing bitmask order.
pub fn bad_partitions(frame: &ExactFrame) -> impl Iterator<Item = BadPartition> + '_ {
    let m = frame.len();
    (0..(1u64 << (m - 1))).filter_map(move |mask| {
        let subset = mask_members(mask, m);
        let a = side(frame, &subset);
        if a.null.is_empty() {
            return None;
        }
        let b = side(frame, &complement(&subset, m));
        if b.null.is_empty() {
            return None;
        }
        Some(BadPartition {
            subset,
            orth_subset: a.null,
            orth_complement: b.null,
        })
    })
}

/// `u + v` and `u - v` are disjointly supported after scaling both to unit
/// norm. Compared without square roots: `u_i^2 |v|^2 = v_i^2 |u|^2`.
pub fn normalized_disjoint_support(u: &Vector<Rational>, v: &Vector<Rational>) -> bool {
    let (nu, nv) = (u.norm_sq(), v.norm_sq());
    u.iter()
        .zip(v.iter())
        .all(|(a, b)| a * a * &nv == b * b * &nu)
}

/// Range of `s^2` over which `u + s v`, `u - s v` fail to be weakly phase
/// related: `(low, high)` with `high = None` meaning unbounded. Empty when
/// `high <= low`.
fn failure_window(u: &Vector<Rational>, v: &Vector<Rational>) -> (Rational, Option<Rational>) {
    let mut low: Option<Rational> = None;
    let mut high: Option<Option<Rational>> = None;
    for (a, b) in u.iter().zip(v.iter()) {
        if !b.is_zero() {
            let r = (a * a) / (b * b);
            if low.as_ref().is_none_or(|l| &r < l) {
                low = Some(r.clone());
            }
            if !a.is_zero() {
                let better = match &high {
                    None => true,
                    Some(None) => false,
                    Some(Some(h)) => &r > h,
                };
                if better {
                    high = Some(Some(r));
                }
            }
        } else if !a.is_zero() {
            high = Some(None);
        }
    }
    let low = low.unwrap_or_else(Rational::zero);
    match high {
        None => (low.clone(), Some(low)),
        Some(h) => (low, h),
    }
}

/// A positive rational `s` with `s^2` strictly inside the failure window,
/// preferring `sqrt(target)` when that is rational and admissible.
fn separating_scale(
    u: &Vector<Rational>,
    v: &Vector<Rational>,
    target: Option<Rational>,
) -> Option<Rational> {
    let (low, high) = failure_window(u, v);
    let inside = |q: &Rational| q > &low && high.as_ref().is_none_or(|h| q < h);
    if let Some(h) = &high {
        if h <= &low {
            return None;
        }
    }
    let one = Rational::one();
    let target = match target {
        Some(t) if inside(&t) => t,
        _ if inside(&one) => one,
        _ => match &high {
            None => &low + Rational::one(),
            Some(h) => (&low + h) * ratio(1, 2),
        },
    };
    if let Some(s) = rational_sqrt(&target) {
        return Some(s);
    }
    // Newton's iteration from above keeps s^2 >= target > low and converges
    // down to target < high.
    let half = ratio(1, 2);
    let mut s = (&target + Rational::one()) * &half;
    while !inside(&(&s * &s)) {
        s = (&s + &target / &s) * &half;
    }
    Some(s)
}

fn pair_from(frame: &ExactFrame, u: &Vector<Rational>, v: &Vector<Rational>, s: &Rational) -> AmbiguityPair {
    let half = ratio(1, 2);
    let sv = v.scale(s);
    let x = u.add(&sv).scale(&half);
    let y = u.sub(&sv).scale(&half);
    AmbiguityPair::new(frame, x, y).expect("complement vectors give equal magnitudes")
}

/// The ambiguity pair `(a + s b)/2, (a - s b)/2` for a partition with line
/// complements, where `s = |a| / |b|` when that is rational (always the case
/// when the partition passes the disjoint-support test).
pub fn line_pair(frame: &ExactFrame, part: &BadPartition) -> AmbiguityPair {
    let (a, b) = (&part.orth_subset[0], &part.orth_complement[0]);
    let target = a.norm_sq() / b.norm_sq();
    let s = rational_sqrt(&target)
        .or_else(|| separating_scale(a, b, Some(target.clone())))
        .expect("a failing partition has a nonempty window");
    pair_from(frame, a, b, &s)
}

/// Non-phase-related pair from a partition with a complement of dimension at
/// least two.
fn high_dimensional_pair(frame: &ExactFrame, part: &BadPartition) -> Option<AmbiguityPair> {
    let n = frame.dim() as u32;
    let tries = (1u64 << (n - 1).min(62)) + 1;
    let (us, vs) = (&part.orth_subset, &part.orth_complement);
    for k in 0..tries {
        let k = Rational::from_integer(k.into());
        let (u, v) = if us.len() >= 2 {
            (us[0].add(&us[1].scale(&k)), vs[0].clone())
        } else {
            (us[0].clone(), vs[0].add(&vs[1].scale(&k)))
        };
        if let Some(s) = separating_scale(&u, &v, None) {
            return Some(pair_from(frame, &u, &v, &s));
        }
    }
    None
}

fn canonical_member(frame: &ExactFrame) -> Option<usize> {
    frame.vectors().iter().find_map(|v| {
        let support = v.support();
        (support.len() == 1).then(|| support[0])
    })
}

fn partition_for(frame: &ExactFrame, subset: Vec<usize>) -> BadPartition {
    let other = complement(&subset, frame.len());
    BadPartition {
        orth_subset: side(frame, &subset).null,
        orth_complement: side(frame, &other).null,
        subset,
    }
}

fn no_from_high(frame: &ExactFrame, part: &BadPartition, rule: Rule) -> Decision {
    match high_dimensional_pair(frame, part) {
        Some(p) => Decision::no(rule, Witness::Ambiguity(p)),
        None => Decision {
            outcome: Outcome::Undecided,
            witness: None,
            rule,
        },
    }
}

pub fn decide_wpr(frame: &ExactFrame) -> Result<Decision> {
    decide_wpr_with(frame, &WprConfig::default())
}

/// Decides weak phase retrieval. Every `No` carries an ambiguity pair that is
/// not weakly phase related; `rule` names the criterion that fired first.
pub fn decide_wpr_with(frame: &ExactFrame, cfg: &WprConfig) -> Result<Decision> {
    let (m, n) = (frame.len(), frame.dim());
    if m + 2 < 2 * n {
        let part = partition_for(frame, (0..m.min(n - 1)).collect());
        return Ok(no_from_high(frame, &part, Rule::BelowWeakBound));
    }
    let at_bound = m + 2 == 2 * n;
    if at_bound {
        if let Some(dep) = first_dependent_subset(frame) {
            let part = partition_for(frame, dep);
            return Ok(no_from_high(frame, &part, Rule::NotFullSparkAtWeakBound));
        }
    }
    check_cap(m, cfg.enumeration_cap)?;
    let mut decision = scan(frame);
    if at_bound && decision.outcome == Outcome::No {
        if let Some(coordinate) = canonical_member(frame) {
            decision.rule = Rule::CanonicalVectorAtWeakBound { coordinate };
        }
    }
    Ok(decision)
}

fn scan(frame: &ExactFrame) -> Decision {
    let mut first_high: Option<BadPartition> = None;
    for part in bad_partitions(frame) {
        if part.is_line_pair() {
            if !normalized_disjoint_support(&part.orth_subset[0], &part.orth_complement[0]) {
                let pair = line_pair(frame, &part);
                return Decision::no(Rule::DisjointSupportScan, Witness::Ambiguity(pair));
            }
        } else if first_high.is_none() {
            first_high = Some(part);
        }
    }
    match first_high {
        Some(part) => no_from_high(frame, &part, Rule::HighDimensionalComplement),
        None => Decision::yes(Rule::DisjointSupportScan),
    }
}

/// One ambiguity pair per non-spanning partition with line complements.
pub fn ambiguity_pairs(frame: &ExactFrame) -> Result<Vec<AmbiguityPair>> {
    ambiguity_pairs_with(frame, &WprConfig::default())
}

pub fn ambiguity_pairs_with(frame: &ExactFrame, cfg: &WprConfig) -> Result<Vec<AmbiguityPair>> {
    check_cap(frame.len(), cfg.enumeration_cap)?;
    Ok(bad_partitions(frame)
        .filter(BadPartition::is_line_pair)
        .map(|p| line_pair(frame, &p))
        .collect())
}

/// Whether the pair is weakly phase related; a convenience for callers
/// holding an [`AmbiguityPair`].
pub fn pair_is_related(pair: &AmbiguityPair) -> bool {
    matches!(
        weakly_same_phase(&pair.x, &pair.y),
        Ok(WeakPhaseRelation::WeaklySamePhase { .. })
    )
}
