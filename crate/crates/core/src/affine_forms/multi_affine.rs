use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_traits::Float;

use super::AffineForm;
use crate::error::{Error, Result};
use crate::tensor_core::{all_permutations, ComplexScalar, Permutation, VectorD};

/// Largest arity [`antisymmetrize_generator`] will enumerate `S_m` for.
pub const MAX_GENERATOR_ARITY: usize = 6;
/// Largest coefficient table, `(d + 1)^m`.
pub const MAX_TABLE_SIZE: usize = 100_000;
/// Largest permutation orbit whose constraint block is decomposed densely.
pub const MAX_ORBIT_SIZE: usize = 720;
/// Relative singular-value threshold for the nullspace.
pub const NULLSPACE_TOL: f64 = 1e-8;

/// A function of `arity` points in `C^dim` that is affine in each point.
///
/// Coefficients are indexed by a choice per argument: `0` for the constant
/// `1`, or `i + 1` for coordinate `i`. The choice of argument 0 is the most
/// significant digit (base `dim + 1`) of the flat index.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiAffineForm {
    dim: usize,
    arity: usize,
    coefficients: Vec<f64>,
}

fn table_size(dim: usize, arity: usize) -> Result<usize> {
    let base = dim + 1;
    let mut size: usize = 1;
    for _ in 0..arity {
        size = size
            .checked_mul(base)
            .filter(|&s| s <= MAX_TABLE_SIZE)
            .ok_or(Error::SizeOverflow { size: base.saturating_pow(arity as u32), limit: MAX_TABLE_SIZE })?;
    }
    Ok(size)
}

impl MultiAffineForm {
    pub fn zeros(dim: usize, arity: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        Ok(Self { dim, arity, coefficients: vec![0.0; table_size(dim, arity)?] })
    }

    pub fn from_coefficients(dim: usize, arity: usize, coefficients: Vec<f64>) -> Result<Self> {
        let expected = Self::zeros(dim, arity)?.coefficients.len();
        if coefficients.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: coefficients.len() });
        }
        Ok(Self { dim, arity, coefficients })
    }

    /// `det(x_{args[0]}, …, x_{args[d−1]})` as a form of `arity` arguments.
    pub fn wedge(dim: usize, arity: usize, args: &[usize]) -> Result<Self> {
        if args.len() != dim {
            return Err(Error::ArgumentCount { expected: dim, found: args.len() });
        }
        if let Some(&bad) = args.iter().find(|&&a| a >= arity) {
            return Err(Error::ArgumentCount { expected: arity, found: bad + 1 });
        }
        let mut form = Self::zeros(dim, arity)?;
        let mut choices = vec![0; arity];
        for tau in all_permutations(dim) {
            choices.iter_mut().for_each(|c| *c = 0);
            for (j, &arg) in args.iter().enumerate() {
                choices[arg] = tau.apply(j) + 1;
            }
            let idx = form.flat_index(&choices);
            form.coefficients[idx] += f64::from(tau.sign());
        }
        Ok(form)
    }

    /// Coefficients of `det(x_1 − x_0, …, x_d − x_0)`.
    pub fn affine_det(dim: usize) -> Result<Self> {
        let arity = dim + 1;
        let columns: Vec<usize> = (1..=dim).collect();
        let mut form = Self::wedge(dim, arity, &columns)?;
        for i in 0..dim {
            let mut replaced = columns.clone();
            replaced[i] = 0;
            form = form.sub(&Self::wedge(dim, arity, &replaced)?)?;
        }
        Ok(form)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn flat_index(&self, choices: &[usize]) -> usize {
        choices.iter().fold(0, |acc, &c| acc * (self.dim + 1) + c)
    }

    pub fn choices(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.arity];
        for c in out.iter_mut().rev() {
            *c = flat % (self.dim + 1);
            flat /= self.dim + 1;
        }
        out
    }

    /// Number of non-constant factors of the monomial at `flat`.
    pub fn monomial_degree(&self, flat: usize) -> usize {
        self.choices(flat).iter().filter(|&&c| c != 0).count()
    }

    pub fn norm(&self) -> f64 {
        Float::sqrt(self.coefficients.iter().map(|c| c * c).sum::<f64>())
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0.0)
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.arity != other.arity {
            return Err(Error::ArgumentCount { expected: self.arity, found: other.arity });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let coefficients = self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b).collect();
        Ok(Self { coefficients, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { coefficients: self.coefficients.iter().map(|c| c * s).collect(), ..*self }
    }

    /// The same form viewed as a function of `arity` arguments, constant in the
    /// extra trailing ones.
    pub fn with_arity(&self, arity: usize) -> Result<Self> {
        if arity < self.arity {
            return Err(Error::ArgumentCount { expected: self.arity, found: arity });
        }
        let shift = (self.dim + 1).pow((arity - self.arity) as u32);
        let mut out = Self::zeros(self.dim, arity)?;
        for (flat, &c) in self.coefficients.iter().enumerate() {
            out.coefficients[flat * shift] = c;
        }
        Ok(out)
    }

    /// `(f ∘ σ)(x_1, …, x_m) = f(x_σ(1), …, x_σ(m))`.
    pub fn permute_args(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.len() != self.arity {
            return Err(Error::ArgumentCount { expected: self.arity, found: sigma.len() });
        }
        let mut out = Self::zeros(self.dim, self.arity)?;
        let mut moved = vec![0; self.arity];
        for (flat, &coef) in self.coefficients.iter().enumerate() {
            if coef == 0.0 {
                continue;
            }
            for (k, &choice) in self.choices(flat).iter().enumerate() {
                moved[sigma.apply(k)] = choice;
            }
            let idx = out.flat_index(&moved);
            out.coefficients[idx] += coef;
        }
        Ok(out)
    }

    pub fn evaluate(&self, points: &[VectorD]) -> Result<ComplexScalar> {
        if points.len() != self.arity {
            return Err(Error::ArgumentCount { expected: self.arity, found: points.len() });
        }
        if let Some(p) = points.iter().find(|p| p.dim() != self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.dim() });
        }
        let mut acc = ComplexScalar::default();
        for (flat, &coef) in self.coefficients.iter().enumerate() {
            if coef == 0.0 {
                continue;
            }
            let mut term = ComplexScalar::new(coef, 0.0);
            for (k, &choice) in self.choices(flat).iter().enumerate() {
                if choice != 0 {
                    term *= points[k][choice - 1];
                }
            }
            acc += term;
        }
        Ok(acc)
    }
}

impl AffineForm for MultiAffineForm {
    fn dim(&self) -> usize {
        self.dim
    }

    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, points: &[VectorD]) -> Result<ComplexScalar> {
        self.evaluate(points)
    }
}

/// `Σ_{σ ∈ S_m} ε(σ) (generator ∘ σ)`, with the generator extended to `m`
/// arguments if it has fewer.
pub fn antisymmetrize_generator(generator: &MultiAffineForm, m: usize) -> Result<MultiAffineForm> {
    if m > MAX_GENERATOR_ARITY {
        return Err(Error::ArityOverflow { arity: m, max: MAX_GENERATOR_ARITY });
    }
    let lifted = generator.with_arity(m)?;
    let mut out = MultiAffineForm::zeros(lifted.dim, m)?;
    let mut moved = vec![0; m];
    for sigma in all_permutations(m) {
        let sign = f64::from(sigma.sign());
        for (flat, &coef) in lifted.coefficients.iter().enumerate() {
            if coef == 0.0 {
                continue;
            }
            for (k, &choice) in lifted.choices(flat).iter().enumerate() {
                moved[sigma.apply(k)] = choice;
            }
            let idx = out.flat_index(&moved);
            out.coefficients[idx] += sign * coef;
        }
    }
    Ok(out)
}

/// Antisymmetric multi-affine forms of one homogeneity sector.
#[derive(Debug, Clone, PartialEq)]
pub struct NullspaceReport {
    pub dim: usize,
    pub arity: usize,
    pub degree: usize,
    pub dimension: usize,
    /// Singular values of the constraint system, descending.
    pub singular_values: Vec<f64>,
    /// Orthonormal basis of the nullspace.
    pub basis: Vec<MultiAffineForm>,
    /// `‖c − Π c‖ / ‖c‖` for the affine determinant's coefficients `c`
    /// projected onto the span; present when `arity == dim + 1`.
    pub affine_det_residual: Option<f64>,
}

impl NullspaceReport {
    pub fn contains_affine_det(&self, tol: f64) -> bool {
        self.affine_det_residual.is_some_and(|r| r < tol)
    }
}

/// Solves `f ∘ τ_k = −f` for the adjacent transpositions `τ_k` on the
/// multi-affine monomials of total degree `degree`.
///
/// The constraints only couple monomials in the same `S_m` orbit, so the
/// system is decomposed orbit by orbit; blocks are visited in order of their
/// smallest flat index.
pub fn conjecture_nullspace(dim: usize, arity: usize, degree: usize) -> Result<NullspaceReport> {
    let space = MultiAffineForm::zeros(dim, arity)?;
    let mut orbits: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for flat in 0..space.coefficients.len() {
        let mut key = space.choices(flat);
        if key.iter().filter(|&&c| c != 0).count() != degree {
            continue;
        }
        key.sort_unstable();
        orbits.entry(key).or_default().push(flat);
    }
    let mut orbits: Vec<Vec<usize>> = orbits.into_values().collect();
    orbits.sort_by_key(|members| members[0]);

    struct Block {
        members: Vec<usize>,
        singular_values: Vec<f64>,
        right_vectors: DMatrix<f64>,
    }

    let mut blocks = Vec::with_capacity(orbits.len());
    for members in orbits {
        let n = members.len();
        if n > MAX_ORBIT_SIZE {
            return Err(Error::SizeOverflow { size: n, limit: MAX_ORBIT_SIZE });
        }
        let position = |flat: usize| members.binary_search(&flat).expect("orbit is closed");
        let transpositions = arity.saturating_sub(1);
        let mut a = DMatrix::<f64>::zeros((transpositions * n).max(n), n);
        for (col, &flat) in members.iter().enumerate() {
            let choices = space.choices(flat);
            for k in 0..transpositions {
                let mut swapped = choices.clone();
                swapped.swap(k, k + 1);
                let row = k * n + col;
                a[(row, col)] += 1.0;
                a[(row, position(space.flat_index(&swapped)))] += 1.0;
            }
        }
        let svd = a.svd(false, true);
        let right_vectors = svd.v_t.expect("requested");
        blocks.push(Block { members, singular_values: svd.singular_values.iter().copied().collect(), right_vectors });
    }

    let sigma_max = blocks.iter().flat_map(|b| b.singular_values.iter().copied()).fold(0.0, f64::max);
    let threshold = NULLSPACE_TOL * sigma_max;
    let mut singular_values = Vec::new();
    let mut basis = Vec::new();
    for block in &blocks {
        for (i, &s) in block.singular_values.iter().enumerate() {
            singular_values.push(s);
            if s > threshold {
                continue;
            }
            let mut form = MultiAffineForm::zeros(dim, arity)?;
            for (k, &flat) in block.members.iter().enumerate() {
                form.coefficients[flat] = block.right_vectors[(i, k)];
            }
            basis.push(canonical_sign(form));
        }
    }
    singular_values.sort_by(|a, b| b.total_cmp(a));

    let affine_det_residual = if arity == dim + 1 {
        let target = MultiAffineForm::affine_det(dim)?;
        let norm = target.norm();
        let mut residual = target;
        for b in &basis {
            residual = residual.sub(&b.scale(b.dot(&residual)))?;
        }
        Some(residual.norm() / norm)
    } else {
        None
    };

    Ok(NullspaceReport { dim, arity, degree, dimension: basis.len(), singular_values, basis, affine_det_residual })
}

/// Flips the sign so the first largest-magnitude coefficient is positive.
fn canonical_sign(form: MultiAffineForm) -> MultiAffineForm {
    let lead =
        form.coefficients.iter().copied().fold(0.0_f64, |best, c| if c.abs() > best.abs() + 1e-12 { c } else { best });
    if lead < 0.0 {
        form.scale(-1.0)
    } else {
        form
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_forms::affine_det_points;
    use crate::tensor_core::c;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_points(rng: &mut ChaCha8Rng, d: usize, m: usize) -> Vec<VectorD> {
        (0..m)
            .map(|_| {
                VectorD::new((0..d).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect())
                    .unwrap()
            })
            .collect()
    }

    #[test]
    fn affine_det_coefficients_evaluate_correctly() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for d in 1..=4 {
            let form = MultiAffineForm::affine_det(d).unwrap();
            for _ in 0..10 {
                let pts = random_points(&mut rng, d, d + 1);
                let want = affine_det_points(&pts).unwrap();
                assert!((form.evaluate(&pts).unwrap() - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn generator_ab_gives_twice_the_affine_det() {
        let ab = MultiAffineForm::wedge(2, 2, &[0, 1]).unwrap();
        let out = antisymmetrize_generator(&ab, 3).unwrap();
        assert_eq!(out, MultiAffineForm::affine_det(2).unwrap().scale(2.0));
    }

    #[test]
    fn generator_abc_gives_minus_six_affine_det() {
        let abc = MultiAffineForm::wedge(3, 3, &[0, 1, 2]).unwrap();
        let out = antisymmetrize_generator(&abc, 4).unwrap();
        assert_eq!(out, MultiAffineForm::affine_det(3).unwrap().scale(-6.0));
    }

    #[test]
    fn zero_generator() {
        let zero = MultiAffineForm::zeros(2, 3).unwrap();
        assert!(antisymmetrize_generator(&zero, 3).unwrap().is_zero());
    }

    #[test]
    fn generator_arity_limits() {
        let g = MultiAffineForm::zeros(1, 2).unwrap();
        assert_eq!(antisymmetrize_generator(&g, 7), Err(Error::ArityOverflow { arity: 7, max: 6 }));
        let g = MultiAffineForm::zeros(1, 4).unwrap();
        assert!(antisymmetrize_generator(&g, 3).is_err());
    }

    #[test]
    fn antisymmetrized_output_flips_under_adjacent_swaps() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let coefficients = (0..27).map(|_| f64::from(rng.random_range(-3i32..=3))).collect();
        let g = MultiAffineForm::from_coefficients(2, 3, coefficients).unwrap();
        let out = antisymmetrize_generator(&g, 3).unwrap();
        for k in 0..2 {
            let swapped = out.permute_args(&Permutation::transposition(3, k, k + 1)).unwrap();
            assert_eq!(swapped, out.scale(-1.0));
        }
    }

    #[test]
    fn nullspace_plane_sectors() {
        let top = conjecture_nullspace(2, 3, 2).unwrap();
        assert_eq!(top.dimension, 1);
        assert!(top.contains_affine_det(1e-8));
        assert_eq!(conjecture_nullspace(2, 3, 1).unwrap().dimension, 0);
        assert_eq!(conjecture_nullspace(2, 3, 0).unwrap().dimension, 0);
    }

    #[test]
    fn nullspace_size_limit() {
        assert!(matches!(conjecture_nullspace(9, 6, 2), Err(Error::SizeOverflow { .. })));
    }

    #[test]
    fn nullspace_basis_is_orthonormal() {
        let report = conjecture_nullspace(3, 3, 2).unwrap();
        for (i, a) in report.basis.iter().enumerate() {
            for (j, b) in report.basis.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((a.dot(b) - want).abs() < 1e-10);
            }
        }
    }
}
