//! Exact decisions for full spark, the complement property, phase retrieval
//! and weak phase retrieval of finite families of vectors in `R^n`.
//!
//! ```
//! use framelab_core::{decide_wpr, ExactFrame};
//!
//! let frame = ExactFrame::from_ints(&[&[1, 1, 1], &[-1, 1, 1], &[1, -1, 1], &[1, 1, -1]]);
//! assert!(decide_wpr(&frame).unwrap().is_yes());
//! ```

pub mod construct;
pub mod decision;
pub mod error;
pub mod frames;
pub mod linalg;
pub mod perturb;
pub mod spark;
pub mod subsets;
pub mod wpr;

pub use decision::{AmbiguityPair, Decision, Outcome, PartitionWitness, Rule, Witness};
pub use construct::{example, example_registry, NamedFrame};
pub use error::{Error, Result};
pub use frames::{
    frame_bounds, riesz_bounds, unconditional_constant, ExactFrame, FloatFrame, Frame, FrameBounds,
};
pub use linalg::{Matrix, Rational, Scalar, Tolerance, Vector};
pub use perturb::{sphere_distance, Subspace};
pub use spark::{complement_property, does_phase_retrieval, is_full_spark};
pub use wpr::{
    classify_pair, decide_wpr, project_frame, projected_pr_equivalence, weakly_same_phase,
    Classification, WeakPhaseRelation, WprConfig,
};
