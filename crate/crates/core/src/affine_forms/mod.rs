//! Affine antisymmetric forms on `C^d`.
//!
//! The affine determinant `det(x_1 − x_0, …, x_d − x_0)` is antisymmetric in
//! all `d + 1` arguments and invariant under a common translation. The
//! submodules explore which multi-affine forms share that antisymmetry and
//! compute the Kashiwara index of a Lagrangian triple.

mod kashiwara;
mod multi_affine;

pub use kashiwara::{
    kashiwara_index, kashiwara_q, symplectic_form, symplectic_matrix, LagrangianTriple, SignatureResult,
    LAGRANGIAN_TOL, SIGNATURE_ZERO_TOL,
};
pub use multi_affine::{
    antisymmetrize_generator, conjecture_nullspace, MultiAffineForm, NullspaceReport, MAX_GENERATOR_ARITY,
    MAX_TABLE_SIZE, NULLSPACE_TOL,
};

use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::tensor_core::{c, determinant, ComplexScalar, VectorD};

/// Relative singular-value threshold used by [`is_affinely_dependent`].
pub const DEPENDENCE_TOL: f64 = 1e-10;

/// Largest matrix [`laplace_expand`] accepts.
pub const MAX_LAPLACE_DIM: usize = 6;

/// An ordered list of points sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfig {
    dim: usize,
    points: Vec<VectorD>,
}

impl PointConfig {
    pub fn new(points: Vec<VectorD>) -> Result<Self> {
        let dim = points.first().map(VectorD::dim).ok_or(Error::ArgumentCount { expected: 1, found: 0 })?;
        if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        Ok(Self { dim, points })
    }

    pub fn from_real(points: &[&[f64]]) -> Result<Self> {
        Self::new(points.iter().map(|p| VectorD::from_real(p)).collect::<Result<_>>()?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[VectorD] {
        &self.points
    }

    /// `x_i − x_0` for `i ≥ 1`.
    fn differences(&self) -> Vec<VectorD> {
        let origin = &self.points[0];
        self.points[1..].iter().map(|p| p.sub(origin).expect("shared dim")).collect()
    }
}

/// `det(x_1 − x_0, …, x_d − x_0)` for `d + 1` points in `C^d`.
pub fn affine_det(cfg: &PointConfig) -> Result<ComplexScalar> {
    affine_det_points(cfg.points())
}

pub(crate) fn affine_det_points(points: &[VectorD]) -> Result<ComplexScalar> {
    let d = points.first().map(VectorD::dim).ok_or(Error::ArgumentCount { expected: 1, found: 0 })?;
    if points.len() != d + 1 {
        return Err(Error::ArgumentCount { expected: d + 1, found: points.len() });
    }
    let origin = &points[0];
    let mut rows = alloc::vec![ComplexScalar::default(); d * d];
    for (j, p) in points[1..].iter().enumerate() {
        if p.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
        }
        for i in 0..d {
            rows[i * d + j] = p[i] - origin[i];
        }
    }
    Ok(determinant(d, rows))
}

/// Whether the differences `x_i − x_0` have rank below `min(m − 1, d)`.
pub fn is_affinely_dependent(cfg: &PointConfig) -> bool {
    let diffs = cfg.differences();
    let full = diffs.len().min(cfg.dim());
    if full == 0 {
        return false;
    }
    numerical_rank(&diffs, DEPENDENCE_TOL) < full
}

fn numerical_rank(columns: &[VectorD], tol: f64) -> usize {
    let d = columns[0].dim();
    let m = DMatrix::from_fn(d, columns.len(), |i, j| columns[j][i]);
    let sv = m.singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * max).count()
}

/// Determinant by cofactor expansion along the first column.
pub fn laplace_expand(matrix: &DMatrix<ComplexScalar>) -> Result<ComplexScalar> {
    let n = matrix.nrows();
    if matrix.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: matrix.ncols() });
    }
    if n > MAX_LAPLACE_DIM {
        return Err(Error::SizeOverflow { size: n, limit: MAX_LAPLACE_DIM });
    }
    let rows: Vec<usize> = (0..n).collect();
    Ok(cofactor(matrix, &rows, 0))
}

fn cofactor(m: &DMatrix<ComplexScalar>, rows: &[usize], col: usize) -> ComplexScalar {
    match rows.len() {
        0 => c(1.0, 0.0),
        1 => m[(rows[0], col)],
        _ => {
            let mut acc = ComplexScalar::default();
            for (k, &i) in rows.iter().enumerate() {
                let entry = m[(i, col)];
                if entry == ComplexScalar::default() {
                    continue;
                }
                let minor: Vec<usize> = rows.iter().copied().filter(|&x| x != i).collect();
                let term = entry * cofactor(m, &minor, col + 1);
                if k % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// A scalar-valued form of `arity` points in `C^dim`.
pub trait AffineForm {
    fn dim(&self) -> usize;
    fn arity(&self) -> usize;
    fn eval(&self, points: &[VectorD]) -> Result<ComplexScalar>;
}

/// The affine determinant as an [`AffineForm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineDeterminant {
    pub dim: usize,
}

impl AffineForm for AffineDeterminant {
    fn dim(&self) -> usize {
        self.dim
    }

    fn arity(&self) -> usize {
        self.dim + 1
    }

    fn eval(&self, points: &[VectorD]) -> Result<ComplexScalar> {
        affine_det_points(points)
    }
}

/// Wraps a closure as an [`AffineForm`].
pub struct FnForm<F> {
    pub dim: usize,
    pub arity: usize,
    pub f: F,
}

impl<F> AffineForm for FnForm<F>
where
    F: Fn(&[VectorD]) -> ComplexScalar,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, points: &[VectorD]) -> Result<ComplexScalar> {
        if points.len() != self.arity {
            return Err(Error::ArgumentCount { expected: self.arity, found: points.len() });
        }
        Ok((self.f)(points))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeConfig {
    pub trials: usize,
    /// Candidate values of `x_0` tried per trial.
    pub candidates: usize,
    /// `|ω| ≤ zero_tol · (1 + max ‖x_i‖)^arity` counts as zero.
    pub zero_tol: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self { trials: 1000, candidates: 8, zero_tol: 1e-10 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub trials_run: usize,
    /// Samples rejected because `x_1..x_d` already lay in a `(d − 2)`-plane.
    pub skipped: usize,
    /// First `(x_1, …, x_d)` in general position on which every sampled `x_0`
    /// gave zero. The probe stops there.
    pub counterexample: Option<Vec<VectorD>>,
}

impl ProbeReport {
    pub fn is_degenerate(&self) -> bool {
        self.counterexample.is_some()
    }
}

fn random_point<R: Rng + ?Sized>(rng: &mut R, d: usize) -> VectorD {
    VectorD::new((0..d).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()).expect("d > 0")
}

/// Monte Carlo falsifier for non-degeneracy.
///
/// Samples `x_1..x_d` that do not lie in a common affine subspace of
/// dimension `d − 2` and searches among random `x_0` for a nonzero value of
/// the form. A trial where every candidate vanishes is a counterexample.
/// Finding none proves nothing.
pub fn nondegeneracy_probe<F, R>(form: &F, cfg: &ProbeConfig, rng: &mut R) -> Result<ProbeReport>
where
    F: AffineForm + ?Sized,
    R: Rng + ?Sized,
{
    let d = form.dim();
    if form.arity() != d + 1 {
        return Err(Error::ArgumentCount { expected: d + 1, found: form.arity() });
    }
    let mut report = ProbeReport { trials_run: 0, skipped: 0, counterexample: None };
    let mut args = Vec::with_capacity(d + 1);
    for _ in 0..cfg.trials {
        report.trials_run += 1;
        let rest: Vec<VectorD> = (0..d).map(|_| random_point(rng, d)).collect();
        // d points span a (d−2)-plane iff their differences have rank < d − 1
        if is_affinely_dependent(&PointConfig::new(rest.clone())?) {
            report.skipped += 1;
            continue;
        }
        let mut witnessed = false;
        for _ in 0..cfg.candidates.max(1) {
            args.clear();
            args.push(random_point(rng, d));
            args.extend(rest.iter().cloned());
            let scale = args.iter().map(VectorD::norm).fold(0.0, f64::max);
            let value = form.eval(&args)?;
            if value.norm() > cfg.zero_tol * Float::powi(1.0 + scale, form.arity() as i32) {
                witnessed = true;
                break;
            }
        }
        if !witnessed {
            report.counterexample = Some(rest);
            break;
        }
    }
    Ok(report)
}
