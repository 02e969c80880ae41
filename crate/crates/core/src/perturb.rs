//! Distances between subspaces, numerical checks of the hyperplane
//! perturbation inequalities, and the non-density experiment for weak phase
//! retrieval frames.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::decision::Outcome;
use crate::error::{Error, Result};
use crate::frames::{unconditional_constant_dense, FloatFrame, Frame};
use crate::linalg::{
    nullspace_basis_with, operator_norm, orthonormal_columns, singular_values_dense,
    smallest_singular_value, Matrix, Tolerance, Vector,
};
use crate::wpr::decide_wpr;

/// Slack added to every inequality checked by the harnesses.
pub const CHECK_SLACK: f64 = 1e-9;

/// Denominator used to snap perturbed frames to rationals.
pub const RATIONALIZE_DENOMINATOR: u64 = 1_000_000;

/// A subspace of `R^n` held as an orthonormal basis (the columns of `basis`).
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    basis: DMatrix<f64>,
}

impl Subspace {
    /// Span of `vectors`, with numerical rank decided by `tol`.
    pub fn span(vectors: &[Vector<f64>], tol: Tolerance) -> Result<Self> {
        let first = vectors.first().ok_or(Error::ZeroDimensional)?;
        let n = first.len();
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                found: v.len(),
            });
        }
        let m = DMatrix::from_fn(n, vectors.len(), |i, j| vectors[j][i]);
        let basis = orthonormal_columns(&m, tol);
        if basis.ncols() == 0 {
            return Err(Error::ZeroDimensional);
        }
        Ok(Self { basis })
    }

    /// The hyperplane orthogonal to a nonzero `normal`.
    pub fn hyperplane(normal: &Vector<f64>) -> Result<Self> {
        if normal.norm() == 0.0 {
            return Err(Error::ZeroDimensional);
        }
        let row = Matrix::from_rows(vec![normal.clone()], normal.len())?;
        let basis = nullspace_basis_with(&row, Tolerance::default());
        Self::span(&basis, Tolerance::default())
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector<f64>> {
        self.basis
            .column_iter()
            .map(|c| Vector::from_f64(c.as_slice()))
            .collect()
    }

    /// Orthogonal projection of `x` onto the subspace.
    pub fn project(&self, x: &Vector<f64>) -> Vector<f64> {
        let v = DMatrix::from_column_slice(x.len(), 1, x.entries());
        let p = &self.basis * (self.basis.transpose() * v);
        Vector::from_f64(p.as_slice())
    }

    /// Largest deviation of `B^T B` from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.basis.transpose() * &self.basis;
        let id = DMatrix::<f64>::identity(self.dim(), self.dim());
        (g - id).amax()
    }
}

/// `sup` over unit `x` in `X` of the distance from `x` to the unit sphere of
/// `Y`. The nearest unit vector of `Y` to `x` is its normalized projection,
/// which gives `sqrt(2 - 2 |P_Y x|)`; the worst `x` realizes the smallest
/// singular value of `B_Y^T B_X`. When `dim Y < dim X` some unit `x` is
/// orthogonal to `Y` and the distance is `sqrt 2`.
pub fn sphere_distance(x: &Subspace, y: &Subspace) -> Result<f64> {
    if x.dim() == 0 || y.dim() == 0 {
        return Err(Error::ZeroDimensional);
    }
    if x.ambient_dim() != y.ambient_dim() {
        return Err(Error::LengthMismatch {
            expected: x.ambient_dim(),
            found: y.ambient_dim(),
        });
    }
    if y.dim() < x.dim() {
        return Ok(2f64.sqrt());
    }
    // Largest principal angle from both its cosine and its sine, which keeps
    // small distances accurate: 2 - 2 cos(theta) = (2 sin(theta / 2))^2.
    let cos = singular_values_dense(&(y.basis.transpose() * &x.basis))
        .last()
        .copied()
        .unwrap_or(0.0);
    let residual = &x.basis - &y.basis * (y.basis.transpose() * &x.basis);
    let sin = operator_norm(&residual);
    Ok(2.0 * (sin.atan2(cos) / 2.0).sin())
}

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform sample from the unit sphere of `R^n`.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vector<f64> {
    loop {
        let g: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return Vector::from_f64(&g.iter().map(|v| v / norm).collect::<Vec<_>>());
        }
    }
}

fn normalized(v: &Vector<f64>) -> Vector<f64> {
    let n = v.norm();
    Vector::from_f64(&v.iter().map(|e| e / n).collect::<Vec<_>>())
}

fn axpy(a: f64, x: &Vector<f64>, y: &Vector<f64>) -> Vector<f64> {
    Vector::from_f64(&x.iter().zip(y.iter()).map(|(p, q)| a * p + q).collect::<Vec<_>>())
}

fn distance(x: &Vector<f64>, y: &Vector<f64>) -> f64 {
    axpy(-1.0, y, x).norm()
}

/// Splits `budget` into `k` positive parts with random proportions.
fn split_budget<R: Rng + ?Sized>(rng: &mut R, k: usize, budget: f64) -> Vec<f64> {
    let w: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = w.iter().sum();
    w.iter().map(|v| budget * v / total).collect()
}

/// Moves each vector in a Gaussian direction; the step lengths sum to
/// `budget`.
pub fn perturb_vectors<R: Rng + ?Sized>(
    rng: &mut R,
    vectors: &[Vector<f64>],
    budget: f64,
) -> Vec<Vector<f64>> {
    let steps = split_budget(rng, vectors.len(), budget);
    vectors
        .iter()
        .zip(steps)
        .map(|(v, r)| axpy(r, &random_unit_vector(rng, v.len()), v))
        .collect()
}

/// One hyperplane pair with unit normals `x`, `y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct P1Sample {
    pub distance: f64,
    /// `min(|x - y|, |x + y|)`.
    pub normal_gap: f64,
    /// `6 d + slack - normal_gap`; negative means the inequality failed.
    pub margin: f64,
}

impl P1Sample {
    pub fn holds(&self) -> bool {
        self.margin >= 0.0
    }
}

pub fn p1_sample(x: &Vector<f64>, y: &Vector<f64>) -> Result<P1Sample> {
    let (x, y) = (normalized(x), normalized(y));
    let d = sphere_distance(&Subspace::hyperplane(&x)?, &Subspace::hyperplane(&y)?)?;
    let gap = distance(&x, &y).min(axpy(1.0, &x, &y).norm());
    Ok(P1Sample {
        distance: d,
        normal_gap: gap,
        margin: 6.0 * d + CHECK_SLACK - gap,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct P1Report {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub violations: usize,
    /// Largest `normal_gap / d` over samples with `d > 1e-12`.
    pub max_ratio: f64,
    pub min_margin: f64,
}

/// Random hyperplane pairs at distances spread over several orders of
/// magnitude.
pub fn verify_p1(n: usize, trials: usize, seed: u64) -> Result<P1Report> {
    if n < 2 {
        return Err(Error::InvalidArgument("hyperplane checks need n >= 2".into()));
    }
    let mut rng = seeded(seed);
    let mut report = P1Report {
        dim: n,
        trials,
        seed,
        violations: 0,
        max_ratio: 0.0,
        min_margin: f64::INFINITY,
    };
    for _ in 0..trials {
        let x = random_unit_vector(&mut rng, n);
        let scale = 10f64.powf(rng.random_range(-6.0..0.5));
        let y = axpy(scale, &random_unit_vector(&mut rng, n), &x);
        if y.norm() < 1e-9 {
            continue;
        }
        let s = p1_sample(&x, &y)?;
        if !s.holds() {
            report.violations += 1;
        }
        if s.distance > 1e-12 {
            report.max_ratio = report.max_ratio.max(s.normal_gap / s.distance);
        }
        report.min_margin = report.min_margin.min(s.margin);
    }
    Ok(report)
}

fn columns(vectors: &[Vector<f64>]) -> DMatrix<f64> {
    let n = vectors[0].len();
    DMatrix::from_fn(n, vectors.len(), |i, j| vectors[j][i])
}

/// Largest coefficient `|a_i|` over unit vectors `sum a_i x_i` in the span
/// of a linearly independent family.
pub fn coefficient_bound(vectors: &[Vector<f64>]) -> Result<f64> {
    if vectors.is_empty() {
        return Err(Error::EmptyFrame);
    }
    let s = columns(vectors);
    let pinv = s
        .clone()
        .pseudo_inverse(1e-12)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    if smallest_singular_value(&s) <= 1e-12 * operator_norm(&s) {
        return Err(Error::DependentFamily {
            rank: crate::linalg::rank_f64(&Matrix::from_rows(vectors.to_vec(), vectors[0].len())?),
            count: vectors.len(),
        });
    }
    Ok(pinv.row_iter().map(|r| r.norm()).fold(0.0, f64::max))
}

/// Two unit-norm bases of hyperplanes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct L1Sample {
    /// `sum |x_i - y_i|`.
    pub epsilon: f64,
    /// Coefficient bound of the `x` basis.
    pub bound: f64,
    pub distance: f64,
}

impl L1Sample {
    pub fn holds(&self) -> bool {
        self.distance <= 2.0 * self.epsilon * self.bound + CHECK_SLACK
    }
}

pub fn l1_sample(xs: &[Vector<f64>], ys: &[Vector<f64>]) -> Result<L1Sample> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            expected: xs.len(),
            found: ys.len(),
        });
    }
    let tol = Tolerance::default();
    let epsilon = xs.iter().zip(ys).map(|(x, y)| distance(x, y)).sum();
    Ok(L1Sample {
        epsilon,
        bound: coefficient_bound(xs)?,
        distance: sphere_distance(&Subspace::span(xs, tol)?, &Subspace::span(ys, tol)?)?,
    })
}

/// A basis `x` of `R^n` and a perturbation `y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct L3Sample {
    pub epsilon: f64,
    /// Unconditional constant of `x`.
    pub bound: f64,
    /// `|T|` for the map `x_i -> y_i`.
    pub upper: f64,
    /// Smallest singular value of that map.
    pub lower: f64,
    /// Unconditional constant of `y`.
    pub unconditional: f64,
}

impl L3Sample {
    fn eb(&self) -> f64 {
        self.epsilon * self.bound
    }

    /// `(1 - eB) |sum a_i x_i| <= |sum a_i y_i| <= (1 + eB) |sum a_i x_i|`.
    pub fn equivalence_holds(&self) -> bool {
        self.upper <= 1.0 + self.eb() + CHECK_SLACK && self.lower >= 1.0 - self.eb() - CHECK_SLACK
    }

    /// Unconditional constant of `y` against `B (1 + eB)^2`.
    pub fn unconditional_holds(&self) -> bool {
        self.unconditional <= self.bound * (1.0 + self.eb()).powi(2) + CHECK_SLACK
    }

    /// Against `B (1 + eB) / (1 - eB)`, which is what the equivalence
    /// estimates give directly. Only meaningful for `eB < 1`.
    pub fn proved_unconditional_holds(&self) -> bool {
        let eb = self.eb();
        eb >= 1.0 || self.unconditional <= self.bound * (1.0 + eb) / (1.0 - eb) + CHECK_SLACK
    }
}

pub fn l3_sample(xs: &[Vector<f64>], ys: &[Vector<f64>]) -> Result<L3Sample> {
    let n = xs.first().ok_or(Error::EmptyFrame)?.len();
    if xs.len() != n || ys.len() != n {
        return Err(Error::NotABasis);
    }
    let x = columns(xs);
    let y = columns(ys);
    let x_inv = x.clone().try_inverse().ok_or(Error::NotABasis)?;
    let y_inv = y.clone().try_inverse().ok_or(Error::NotABasis)?;
    let t = &y * &x_inv;
    Ok(L3Sample {
        epsilon: xs.iter().zip(ys).map(|(a, b)| distance(a, b)).sum(),
        bound: unconditional_constant_dense(&x, &x_inv),
        upper: operator_norm(&t),
        lower: smallest_singular_value(&t),
        unconditional: unconditional_constant_dense(&y, &y_inv),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct L1L3Report {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub l1_violations: usize,
    pub equivalence_violations: usize,
    pub unconditional_violations: usize,
    pub proved_unconditional_violations: usize,
    /// Largest `d / (2 e B)`.
    pub max_l1_ratio: f64,
    /// Largest `K_y / (B (1 + eB)^2)`.
    pub max_unconditional_ratio: f64,
}

impl L1L3Report {
    pub fn violations(&self) -> usize {
        self.l1_violations + self.equivalence_violations + self.unconditional_violations
    }
}

/// Unit-norm random basis of the span of the orthonormal `basis`.
fn unit_basis_in<R: Rng + ?Sized>(rng: &mut R, basis: &[Vector<f64>]) -> Vec<Vector<f64>> {
    let k = basis.len();
    loop {
        let family: Vec<Vector<f64>> = (0..k)
            .map(|_| {
                let c = random_unit_vector(rng, k);
                let mut v = Vector::from_f64(&vec![0.0; basis[0].len()]);
                for (ci, b) in c.iter().zip(basis) {
                    v = axpy(*ci, b, &v);
                }
                normalized(&v)
            })
            .collect();
        // Keep conditioning moderate so the float checks stay meaningful.
        let s = columns(&family);
        if smallest_singular_value(&s) > 0.05 {
            return family;
        }
    }
}

/// For each trial: a random hyperplane with a unit-norm basis, perturbed
/// and renormalized (L1 check); a random unit-norm basis of `R^n`,
/// perturbed (L3 checks). Budgets are drawn so that `eB < 1/2`.
pub fn verify_l1_l3(n: usize, trials: usize, seed: u64) -> Result<L1L3Report> {
    if n < 2 {
        return Err(Error::InvalidArgument("hyperplane checks need n >= 2".into()));
    }
    if n > crate::frames::MAX_UNCONDITIONAL_DIM {
        return Err(Error::SizeLimit(format!("n = {n} is too large for the unconditional constant")));
    }
    let mut rng = seeded(seed);
    let mut r = L1L3Report {
        dim: n,
        trials,
        seed,
        l1_violations: 0,
        equivalence_violations: 0,
        unconditional_violations: 0,
        proved_unconditional_violations: 0,
        max_l1_ratio: 0.0,
        max_unconditional_ratio: 0.0,
    };
    let canonical: Vec<Vector<f64>> = (0..n).map(|i| Vector::unit(n, i)).collect();
    for _ in 0..trials {
        let normal = random_unit_vector(&mut rng, n);
        let plane = Subspace::hyperplane(&normal)?.basis_vectors();
        let xs = unit_basis_in(&mut rng, &plane);
        let b = coefficient_bound(&xs)?;
        let t = 10f64.powf(rng.random_range(-4.0..-0.3010299956639812));
        let ys: Vec<Vector<f64>> = perturb_vectors(&mut rng, &xs, t / b)
            .iter()
            .map(normalized)
            .collect();
        let s = l1_sample(&xs, &ys)?;
        if !s.holds() {
            r.l1_violations += 1;
        }
        if s.epsilon > 0.0 {
            r.max_l1_ratio = r.max_l1_ratio.max(s.distance / (2.0 * s.epsilon * s.bound));
        }

        let xs = unit_basis_in(&mut rng, &canonical);
        let x = columns(&xs);
        let bound = unconditional_constant_dense(&x, &x.clone().try_inverse().ok_or(Error::NotABasis)?);
        let t = 10f64.powf(rng.random_range(-4.0..-0.3010299956639812));
        let ys = perturb_vectors(&mut rng, &xs, t / bound);
        let s = l3_sample(&xs, &ys)?;
        if !s.equivalence_holds() {
            r.equivalence_violations += 1;
        }
        if !s.unconditional_holds() {
            r.unconditional_violations += 1;
        }
        if !s.proved_unconditional_holds() {
            r.proved_unconditional_violations += 1;
        }
        let ratio = s.unconditional / (s.bound * (1.0 + s.epsilon * s.bound).powi(2));
        r.max_unconditional_ratio = r.max_unconditional_ratio.max(ratio);
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExperimentConfig {
    /// Budget for `sum |x_i - y_i|`.
    pub epsilon: f64,
    pub trials: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn new(epsilon: f64, trials: usize, seed: u64) -> Result<Self> {
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidArgument(format!("epsilon must be finite and >= 0, got {epsilon}")));
        }
        if trials == 0 {
            return Err(Error::InvalidArgument("trials must be positive".into()));
        }
        Ok(Self {
            epsilon,
            trials,
            seed,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub epsilon: f64,
    pub trials: usize,
    pub seed: u64,
    /// Number of vectors in the input before reduction to `2n - 2`.
    pub input_len: usize,
    pub base_outcome: Outcome,
    pub failing: usize,
    pub undecided: usize,
}

impl DensityReport {
    pub fn fraction_failing(&self) -> f64 {
        self.failing as f64 / self.trials as f64
    }
}

fn reduce_to_bound(base: &FloatFrame) -> Result<FloatFrame> {
    let n = base.dim();
    let m = 2 * n.max(2) - 2;
    if base.len() < m {
        return Err(Error::TooFewVectors {
            needed: m,
            got: base.len(),
        });
    }
    Frame::new(base.vectors()[..m].to_vec())
}

/// Perturbs the first `2n - 2` vectors of `base` within the budget, snaps
/// each result to rationals and decides weak phase retrieval exactly.
pub fn density_experiment(base: &FloatFrame, cfg: &ExperimentConfig) -> Result<DensityReport> {
    let frame = reduce_to_bound(base)?;
    let base_outcome = decide_wpr(&frame.rationalize(RATIONALIZE_DENOMINATOR))?.outcome;
    let mut rng = seeded(cfg.seed);
    let mut report = DensityReport {
        epsilon: cfg.epsilon,
        trials: cfg.trials,
        seed: cfg.seed,
        input_len: base.len(),
        base_outcome,
        failing: 0,
        undecided: 0,
    };
    for _ in 0..cfg.trials {
        let ys = perturb_vectors(&mut rng, frame.vectors(), cfg.epsilon);
        let exact = Frame::new(ys)?.rationalize(RATIONALIZE_DENOMINATOR);
        match decide_wpr(&exact)?.outcome {
            Outcome::No => report.failing += 1,
            Outcome::Undecided => report.undecided += 1,
            Outcome::Yes => {}
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensitySweep {
    pub steps: Vec<DensityReport>,
    /// First budget in the sweep at which every trial failed.
    pub threshold: Option<f64>,
}

/// Halves the budget from `start` until every trial fails or `steps` budgets
/// have been tried. Each step reuses `cfg.seed`.
pub fn density_sweep(base: &FloatFrame, cfg: &ExperimentConfig, steps: usize) -> Result<DensitySweep> {
    let mut out = DensitySweep {
        steps: Vec::new(),
        threshold: None,
    };
    let mut epsilon = cfg.epsilon;
    for _ in 0..steps {
        let r = density_experiment(base, &ExperimentConfig { epsilon, ..*cfg })?;
        let done = r.failing == r.trials;
        out.steps.push(r);
        if done {
            out.threshold = Some(epsilon);
            break;
        }
        epsilon /= 2.0;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(x: f64, y: f64) -> Subspace {
        Subspace::span(&[Vector::from_f64(&[x, y])], Tolerance::default()).unwrap()
    }

    #[test]
    fn distance_examples() {
        let e1 = line(1.0, 0.0);
        assert_eq!(sphere_distance(&e1, &e1).unwrap(), 0.0);
        let d = sphere_distance(&e1, &line(0.0, 1.0)).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-12);
        let t = std::f64::consts::PI / 6.0;
        let d = sphere_distance(&e1, &line(t.cos(), t.sin())).unwrap();
        assert!((d - (2.0 - 2.0 * t.cos()).sqrt()).abs() < 1e-12);
        assert!((d - 0.5176).abs() < 1e-4);
    }

    #[test]
    fn smaller_target_is_far() {
        let plane = Subspace::span(
            &[Vector::from_f64(&[1.0, 0.0, 0.0]), Vector::from_f64(&[0.0, 1.0, 0.0])],
            Tolerance::default(),
        )
        .unwrap();
        let l = Subspace::span(&[Vector::from_f64(&[1.0, 0.0, 0.0])], Tolerance::default()).unwrap();
        assert!((sphere_distance(&plane, &l).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(sphere_distance(&l, &plane).unwrap(), 0.0);
    }

    #[test]
    fn zero_dimensional_rejected() {
        assert_eq!(
            Subspace::span(&[Vector::from_f64(&[0.0, 0.0])], Tolerance::default()),
            Err(Error::ZeroDimensional)
        );
    }

    #[test]
    fn p1_same_and_rotated_lines() {
        let x = Vector::from_f64(&[0.0, 1.0]);
        let s = p1_sample(&x, &x).unwrap();
        assert!(s.normal_gap < 1e-12 && s.holds());
        let t = std::f64::consts::PI / 64.0;
        let s = p1_sample(&x, &Vector::from_f64(&[-t.sin(), t.cos()])).unwrap();
        assert!(s.holds());
        assert!(s.margin > 4.0 * s.distance);
    }

    #[test]
    fn p1_harness_is_clean() {
        let r = verify_p1(3, 200, 7).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.max_ratio < 1.0 + 1e-6);
    }

    #[test]
    fn l1_l3_identity_and_small_perturbation() {
        let xs: Vec<_> = (0..3).map(|i| Vector::unit(3, i)).collect();
        let s = l3_sample(&xs, &xs).unwrap();
        assert_eq!(s.epsilon, 0.0);
        assert!((s.upper - 1.0).abs() < 1e-12 && (s.lower - 1.0).abs() < 1e-12);
        let mut rng = seeded(1);
        let ys = perturb_vectors(&mut rng, &xs, 3e-3);
        let s = l3_sample(&xs, &ys).unwrap();
        assert!((s.epsilon - 3e-3).abs() < 1e-12);
        assert!(s.equivalence_holds() && s.unconditional_holds());
        let plane = &xs[..2];
        let s = l1_sample(plane, plane).unwrap();
        assert_eq!(s.distance, 0.0);
    }

    #[test]
    fn l1_l3_harness_is_clean() {
        let r = verify_l1_l3(3, 100, 11).unwrap();
        assert_eq!(r.l1_violations, 0);
        assert_eq!(r.equivalence_violations, 0);
        assert_eq!(r.proved_unconditional_violations, 0);
    }

    #[test]
    fn zero_budget_reproduces_base() {
        let base = FloatFrame::from_f64_rows(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let r = density_experiment(&base, &ExperimentConfig::new(0.0, 5, 3).unwrap()).unwrap();
        assert_eq!(r.base_outcome, Outcome::No);
        assert_eq!(r.failing, 5);
    }

    #[test]
    fn too_few_vectors_for_density() {
        let base = FloatFrame::from_f64_rows(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        let cfg = ExperimentConfig::new(0.1, 1, 0).unwrap();
        assert!(matches!(density_experiment(&base, &cfg), Err(Error::TooFewVectors { .. })));
    }
}
