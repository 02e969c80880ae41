//! Fixed inputs shared by the benchmarks.

use framelab_core::ExactFrame;

/// The 4 x 3 sign matrix that does weak phase retrieval.
pub fn pm_ones() -> ExactFrame {
    ExactFrame::from_ints(&[&[1, 1, 1], &[-1, 1, 1], &[1, -1, 1], &[1, 1, -1]])
}

/// `m` vectors on the moment curve `(1, t, t^2, ...)`, which is full spark.
pub fn moment_curve(m: usize, n: usize) -> ExactFrame {
    let rows: Vec<Vec<i64>> = (1..=m as i64)
        .map(|t| (0..n as u32).map(|k| t.pow(k)).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    ExactFrame::from_ints(&refs)
}
