//! Weak phase retrieval: the sign relation, the decision procedure,
//! classification of equal-measurement pairs and coordinate projections.

mod classify;
mod decide;
mod phase;
mod project;

pub use classify::{classify_pair, classify_pair_f64, Classification, ClassificationCase, Coefficient};
pub use decide::{
    ambiguity_pairs, ambiguity_pairs_with, bad_partitions, decide_wpr, decide_wpr_with, line_pair,
    normalized_disjoint_support, pair_is_related, BadPartition, WprConfig,
};
pub use phase::{verify_t70, weakly_same_phase, WeakPhaseRelation};
pub use project::{
    project_frame, projected_pr_equivalence, projected_pr_equivalence_with, ProjectedReport,
    SharedZero,
};
