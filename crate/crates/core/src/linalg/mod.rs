//! Exact and floating-point vectors and matrices.
//!
//! Every decision in this crate (spark, complement property, weak phase
//! retrieval) goes through the exact routines. The float routines exist for
//! quantities that are irrational in general: singular values, frame bounds,
//! subspace distances.

mod exact;
mod float;
mod types;

pub use exact::{determinant, nullspace_basis, rank, rational_sqrt, rref};
pub use float::{
    nullspace_basis_with, operator_norm, orthonormal_columns, rank_f64, rank_with,
    singular_values, singular_values_dense, smallest_singular_value, Tolerance,
};
pub use types::{
    exact_from_f64, int, ratio, ratio_to_f64, snap_f64, Matrix, Rational, Scalar, Vector,
};
