//! Complex linear and exterior algebra primitives.
//!
//! Vectors live in `C^d`, tensors of degree `p` are stored densely as `d^p`
//! complex entries in row-major multi-index order. Everything here is a pure
//! function of immutable values.

mod permutation;

pub use permutation::{all_permutations, factorial, Permutation};

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// Largest degree `antisymmetrize` will enumerate `S_p` for.
pub const MAX_ANTISYMMETRIZE_DEGREE: usize = 8;

#[inline]
pub fn c(re: f64, im: f64) -> ComplexScalar {
    Complex64::new(re, im)
}

#[inline]
pub fn r(re: f64) -> ComplexScalar {
    Complex64::new(re, 0.0)
}

/// A vector in `C^d`, `d ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorD(Vec<ComplexScalar>);

impl VectorD {
    pub fn new(entries: Vec<ComplexScalar>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(Self(entries))
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| r(x)).collect())
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![ComplexScalar::default(); dim])
    }

    /// The `k`-th standard basis vector of `C^dim`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        let mut v = Self::zeros(dim)?;
        v.0[k] = r(1.0);
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[ComplexScalar] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        num_traits::Float::sqrt(self.0.iter().map(|z| z.norm_sqr()).sum::<f64>())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, s: ComplexScalar) -> Self {
        Self(self.0.iter().map(|z| z * s).collect())
    }
}

impl Index<usize> for VectorD {
    type Output = ComplexScalar;

    fn index(&self, k: usize) -> &ComplexScalar {
        &self.0[k]
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A degree-`p` tensor over `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    dim: usize,
    degree: usize,
    entries: Vec<ComplexScalar>,
}

impl DenseTensor {
    pub fn zeros(dim: usize, degree: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        Ok(Self { dim, degree, entries: vec![ComplexScalar::default(); dim.pow(degree as u32)] })
    }

    /// Degree-0 tensor over `C^dim` holding a single scalar.
    pub fn scalar(dim: usize, value: ComplexScalar) -> Result<Self> {
        let mut t = Self::zeros(dim, 0)?;
        t.entries[0] = value;
        Ok(t)
    }

    pub fn from_vector(v: &VectorD) -> Self {
        Self { dim: v.dim(), degree: 1, entries: v.entries().to_vec() }
    }

    pub fn from_entries(dim: usize, degree: usize, entries: Vec<ComplexScalar>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        let expected = dim.pow(degree as u32);
        if entries.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: entries.len() });
        }
        Ok(Self { dim, degree, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entries(&self) -> &[ComplexScalar] {
        &self.entries
    }

    pub fn flat_index(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.degree);
        index.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.degree];
        for slot in idx.iter_mut().rev() {
            *slot = flat % self.dim;
            flat /= self.dim;
        }
        idx
    }

    pub fn get(&self, index: &[usize]) -> ComplexScalar {
        self.entries[self.flat_index(index)]
    }

    pub fn norm(&self) -> f64 {
        num_traits::Float::sqrt(self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        check_dim(self.degree, other.degree)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { entries, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(r(-1.0)))
    }

    pub fn scale(&self, s: ComplexScalar) -> Self {
        Self { entries: self.entries.iter().map(|z| z * s).collect(), ..*self }
    }

    /// Tensor with slots rearranged so that `result[i_1..i_p] = self[i_σ(1)..i_σ(p)]`.
    pub fn permute_slots(&self, sigma: &Permutation) -> Result<Self> {
        check_dim(self.degree, sigma.len())?;
        let mut out = Self { entries: vec![ComplexScalar::default(); self.entries.len()], ..*self };
        let mut source = vec![0; self.degree];
        for flat in 0..self.entries.len() {
            let idx = self.multi_index(flat);
            for (k, s) in source.iter_mut().enumerate() {
                *s = idx[sigma.apply(k)];
            }
            out.entries[flat] = self.get(&source);
        }
        Ok(out)
    }
}

impl Index<&[usize]> for DenseTensor {
    type Output = ComplexScalar;

    fn index(&self, index: &[usize]) -> &ComplexScalar {
        &self.entries[self.flat_index(index)]
    }
}

/// `(s ⊗ t)[I, J] = s[I] · t[J]`.
pub fn tensor_product(s: &DenseTensor, t: &DenseTensor) -> Result<DenseTensor> {
    check_dim(s.dim, t.dim)?;
    let mut entries = Vec::with_capacity(s.entries.len() * t.entries.len());
    for a in &s.entries {
        entries.extend(t.entries.iter().map(|b| a * b));
    }
    Ok(DenseTensor { dim: s.dim, degree: s.degree + t.degree, entries })
}

/// Projection onto the antisymmetric tensors: `(1/p!) Σ_σ ε(σ) t∘σ`.
pub fn antisymmetrize(t: &DenseTensor) -> Result<DenseTensor> {
    if t.degree > MAX_ANTISYMMETRIZE_DEGREE {
        return Err(Error::UnsupportedDegree { degree: t.degree, max: MAX_ANTISYMMETRIZE_DEGREE });
    }
    let perms = all_permutations(t.degree);
    let norm = r(1.0 / perms.len() as f64);
    let mut entries = vec![ComplexScalar::default(); t.entries.len()];
    let mut source = vec![0; t.degree];
    for (flat, out) in entries.iter_mut().enumerate() {
        let idx = t.multi_index(flat);
        let mut acc = ComplexScalar::default();
        for sigma in &perms {
            for (k, s) in source.iter_mut().enumerate() {
                *s = idx[sigma.apply(k)];
            }
            let v = t.get(&source);
            if sigma.sign() > 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        *out = acc * norm;
    }
    Ok(DenseTensor { entries, ..*t })
}

/// `u ∧ v = ½(u⊗v − v⊗u)`.
pub fn wedge2(u: &VectorD, v: &VectorD) -> Result<DenseTensor> {
    let uv = tensor_product(&DenseTensor::from_vector(u), &DenseTensor::from_vector(v))?;
    let vu = tensor_product(&DenseTensor::from_vector(v), &DenseTensor::from_vector(u))?;
    Ok(uv.sub(&vu)?.scale(r(0.5)))
}

/// Determinant of the `d × d` matrix whose columns are `vs`.
pub fn wedge_scalar(vs: &[VectorD]) -> Result<ComplexScalar> {
    let d = vs.first().map(VectorD::dim).ok_or(Error::ArgumentCount { expected: 1, found: 0 })?;
    if vs.len() != d {
        return Err(Error::ArgumentCount { expected: d, found: vs.len() });
    }
    let mut rows = vec![ComplexScalar::default(); d * d];
    for (j, v) in vs.iter().enumerate() {
        check_dim(d, v.dim())?;
        for i in 0..d {
            rows[i * d + j] = v[i];
        }
    }
    Ok(determinant(d, rows))
}

/// Determinant of a row-major `n × n` matrix by Gaussian elimination with
/// partial pivoting.
pub fn determinant(n: usize, mut a: Vec<ComplexScalar>) -> ComplexScalar {
    assert_eq!(a.len(), n * n, "determinant: expected {} entries", n * n);
    match n {
        0 => return r(1.0),
        1 => return a[0],
        2 => return a[0] * a[3] - a[1] * a[2],
        _ => {}
    }
    let mut det = r(1.0);
    for col in 0..n {
        let pivot =
            (col..n).max_by(|&i, &j| a[i * n + col].norm().total_cmp(&a[j * n + col].norm())).expect("non-empty range");
        let p = a[pivot * n + col];
        if p == ComplexScalar::default() {
            return ComplexScalar::default();
        }
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
            }
            det = -det;
        }
        det *= p;
        for row in col + 1..n {
            let factor = a[row * n + col] / p;
            if factor == ComplexScalar::default() {
                continue;
            }
            for k in col..n {
                let v = a[col * n + k];
                a[row * n + k] -= factor * v;
            }
        }
    }
    det
}
