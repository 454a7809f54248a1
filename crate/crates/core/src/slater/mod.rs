//! Affine Slater determinants over a finite probability space.
//!
//! `(X, dμ)` is a finite set of nodes with positive weights summing to one,
//! and a wave function assigns each node a real vector `φ(x) ∈ R^d`. All
//! integrals are exact weighted sums in node-index order. The n-point
//! functions and density matrices are implemented for `d = 2`.

mod spin;

pub use spin::{
    basis_state, exchange_operator, on_qubit, pauli, s_squared, s_squared_expectation, spin_dot, SpinOperator,
    NORMALIZATION_TOL,
};

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;

use crate::affine_forms::affine_det_points;
use crate::error::{Error, Result};
use crate::summation::pairwise_sum;
use crate::tensor_core::{determinant, r, VectorD};

/// Default tolerance on `|Σ w_k − 1|`.
pub const WEIGHT_SUM_TOL: f64 = 1e-10;
/// Largest node count for which `K² × K²` kernels are materialized.
pub const MAX_DENSE_NODES: usize = 32;
/// Relative tolerance for the symmetry check of `M` tables.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Weighted nodes `(x_k, w_k)` with `Σ w_k = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredSpace {
    weights: Vec<f64>,
}

impl MeasuredSpace {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(weights, WEIGHT_SUM_TOL)
    }

    pub fn with_tolerance(weights: Vec<f64>, tol: f64) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::TooFewNodes(weights.len()));
        }
        if let Some((index, &value)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidWeight { index, value });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::WeightsNotNormalized { sum, tol });
        }
        Ok(Self { weights })
    }

    pub fn uniform(nodes: usize) -> Result<Self> {
        Self::new(vec![1.0 / nodes as f64; nodes])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫ f dμ` as `Σ_k w_k f(k)`.
    pub fn integrate(&self, f: impl Fn(usize) -> f64) -> f64 {
        self.weights.iter().enumerate().map(|(k, w)| w * f(k)).sum()
    }

    /// Node drawn with probability `w_k` from a uniform variate `u ∈ [0, 1)`.
    fn node_at(&self, cumulative: &[f64], u: f64) -> usize {
        cumulative.partition_point(|&c| c <= u).min(self.len() - 1)
    }
}

/// Real wave function `φ = (φ_1, …, φ_d)` sampled on the nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    components: usize,
    values: Vec<f64>,
}

impl WaveFunction {
    /// `rows[k] = φ(x_k)`.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let components = rows.first().map(|r| r.as_ref().len()).ok_or(Error::TooFewNodes(0))?;
        if components == 0 {
            return Err(Error::EmptyVector);
        }
        let mut values = Vec::with_capacity(rows.len() * components);
        for (node, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != components {
                return Err(Error::DimensionMismatch { expected: components, found: row.len() });
            }
            if let Some(component) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFiniteValue { node, component });
            }
            values.extend_from_slice(row);
        }
        Ok(Self { components, values })
    }

    pub fn nodes(&self) -> usize {
        self.values.len() / self.components
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// `φ(x_k)`.
    pub fn value(&self, k: usize) -> &[f64] {
        &self.values[k * self.components..(k + 1) * self.components]
    }

    pub fn component(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().skip(j).step_by(self.components).copied()
    }

    fn pair(&self, k: usize) -> [f64; 2] {
        let v = self.value(k);
        [v[0], v[1]]
    }
}

/// `φ̃ = φ − ⟨φ⟩` together with the subtracted mean.
#[derive(Debug, Clone, PartialEq)]
pub struct CenteredWaveFunction {
    centered: WaveFunction,
    mean: Vec<f64>,
}

impl CenteredWaveFunction {
    pub fn wave(&self) -> &WaveFunction {
        &self.centered
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }
}

fn check_nodes(phi: &WaveFunction, space: &MeasuredSpace) -> Result<()> {
    if phi.nodes() != space.len() {
        return Err(Error::DimensionMismatch { expected: space.len(), found: phi.nodes() });
    }
    Ok(())
}

fn require_plane(phi: &WaveFunction) -> Result<()> {
    if phi.components() != 2 {
        return Err(Error::ComponentCount { expected: 2, found: phi.components() });
    }
    Ok(())
}

pub fn center(phi: &WaveFunction, space: &MeasuredSpace) -> Result<CenteredWaveFunction> {
    check_nodes(phi, space)?;
    let d = phi.components();
    let mean: Vec<f64> = (0..d).map(|j| space.integrate(|k| phi.value(k)[j])).collect();
    let mut values = phi.values.clone();
    for row in values.chunks_mut(d) {
        for (v, m) in row.iter_mut().zip(&mean) {
            *v -= m;
        }
    }
    Ok(CenteredWaveFunction { centered: WaveFunction { components: d, values }, mean })
}

/// `Ψ(x_0, …, x_d) = det(φ(x_1) − φ(x_0), …, φ(x_d) − φ(x_0))`.
pub fn psi(phi: &WaveFunction, labels: &[usize]) -> Result<f64> {
    let d = phi.components();
    if labels.len() != d + 1 {
        return Err(Error::ArgumentCount { expected: d + 1, found: labels.len() });
    }
    let points = labels
        .iter()
        .map(|&label| {
            if label >= phi.nodes() {
                return Err(Error::UnknownNode { label, nodes: phi.nodes() });
            }
            VectorD::from_real(phi.value(label))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(affine_det_points(&points)?.re)
}

#[inline]
fn det2(p: [f64; 2], q: [f64; 2]) -> f64 {
    p[0] * q[1] - p[1] * q[0]
}

#[inline]
fn sub2(p: [f64; 2], q: [f64; 2]) -> [f64; 2] {
    [p[0] - q[0], p[1] - q[1]]
}

#[inline]
fn affine2(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    det2(sub2(b, a), sub2(c, a))
}

fn triple_sum(phi: &WaveFunction, space: &MeasuredSpace, f: impl Fn(f64) -> f64) -> f64 {
    let w = space.weights();
    let mut total = 0.0;
    for (k0, w0) in w.iter().enumerate() {
        let a = phi.pair(k0);
        for (k1, w1) in w.iter().enumerate() {
            let b = phi.pair(k1);
            let mut inner = 0.0;
            for (k2, w2) in w.iter().enumerate() {
                inner += w2 * f(affine2(a, b, phi.pair(k2)));
            }
            total += w0 * w1 * inner;
        }
    }
    total
}

/// `⟨Ψ⟩`; vanishes for every `φ`.
pub fn one_point(phi: &WaveFunction, space: &MeasuredSpace) -> Result<f64> {
    check_nodes(phi, space)?;
    require_plane(phi)?;
    Ok(triple_sum(phi, space, |psi| psi))
}

/// `⟨Ψ|1|Ψ⟩ = ⟨Ψ²⟩`, equal to `6 · det(Gram(φ̃))`.
pub fn two_point(phi: &WaveFunction, space: &MeasuredSpace) -> Result<f64> {
    check_nodes(phi, space)?;
    require_plane(phi)?;
    Ok(triple_sum(phi, space, |psi| psi * psi))
}

/// `G_ij = ⟨φ̃_i φ̃_j⟩`.
pub fn gram(phi: &WaveFunction, space: &MeasuredSpace) -> Result<DMatrix<f64>> {
    let centered = center(phi, space)?;
    let v = centered.wave();
    let d = v.components();
    Ok(DMatrix::from_fn(d, d, |i, j| space.integrate(|k| v.value(k)[i] * v.value(k)[j])))
}

pub fn gram_det(phi: &WaveFunction, space: &MeasuredSpace) -> Result<f64> {
    let g = gram(phi, space)?;
    let d = g.nrows();
    Ok(determinant(d, g.transpose().iter().map(|&x| r(x)).collect()).re)
}

/// Both sides of `3 ∫ ab M (ab + bc + ca) dμ³ = ∫ (ab + bc + ca) M (ab + bc + ca) dμ³`
/// for centered `a, b, c` and a symmetric `M`.
pub fn symmetric_m_identity(
    phi: &WaveFunction,
    space: &MeasuredSpace,
    m: impl Fn(usize, usize, usize) -> f64,
) -> Result<(f64, f64)> {
    check_nodes(phi, space)?;
    require_plane(phi)?;
    let k = space.len();
    check_symmetric(k, &m)?;
    let centered = center(phi, space)?;
    let v = centered.wave();
    let w = space.weights();
    let (mut lhs, mut rhs) = (0.0, 0.0);
    for k0 in 0..k {
        let a = v.pair(k0);
        for k1 in 0..k {
            let b = v.pair(k1);
            for k2 in 0..k {
                let c = v.pair(k2);
                let weight = w[k0] * w[k1] * w[k2] * m(k0, k1, k2);
                let ab = det2(a, b);
                let full = ab + det2(b, c) + det2(c, a);
                lhs += weight * ab * full;
                rhs += weight * full * full;
            }
        }
    }
    Ok((3.0 * lhs, rhs))
}

fn check_symmetric(k: usize, m: &impl Fn(usize, usize, usize) -> f64) -> Result<()> {
    let mut scale: f64 = 0.0;
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                scale = scale.max(m(i, j, l).abs());
            }
        }
    }
    for i in 0..k {
        for j in i..k {
            for l in j..k {
                let base = m(i, j, l);
                for other in [m(i, l, j), m(j, i, l), m(j, l, i), m(l, i, j), m(l, j, i)] {
                    let deviation = (other - base).abs();
                    if deviation > SYMMETRY_TOL * scale {
                        return Err(Error::AsymmetricTable { i, j, k: l, deviation });
                    }
                }
            }
        }
    }
    Ok(())
}

/// A real `K × K` kernel over node pairs `(x', x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel1 {
    nodes: usize,
    values: Vec<f64>,
}

impl Kernel1 {
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn get(&self, primed: usize, unprimed: usize) -> f64 {
        self.values[primed * self.nodes + unprimed]
    }

    /// Row-major values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.nodes {
            for j in 0..self.nodes {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// `Σ_k w_k K(x_k, x_k)`.
    pub fn weighted_trace(&self, space: &MeasuredSpace) -> f64 {
        space.integrate(|k| self.get(k, k))
    }
}

/// `Γ(x'_1, x_1) = ∫∫ Ψ̃(x_0, x_1, x_2) Ψ̃(x_0, x'_1, x_2) dμ(x_0) dμ(x_2)` in
/// centered variables.
pub fn big_gamma(phi: &WaveFunction, space: &MeasuredSpace) -> Result<Kernel1> {
    check_nodes(phi, space)?;
    require_plane(phi)?;
    let centered = center(phi, space)?;
    let v = centered.wave();
    let k = space.len();
    let w = space.weights();
    let mut values = vec![0.0; k * k];
    let mut column = vec![0.0; k];
    for k0 in 0..k {
        let a = v.pair(k0);
        for k2 in 0..k {
            let c = v.pair(k2);
            let weight = w[k0] * w[k2];
            for (x, slot) in column.iter_mut().enumerate() {
                *slot = affine2(a, v.pair(x), c);
            }
            for (xp, &left) in column.iter().enumerate() {
                if left == 0.0 {
                    continue;
                }
                let row = &mut values[xp * k..(xp + 1) * k];
                for (out, &right) in row.iter_mut().zip(&column) {
                    *out += weight * left * right;
                }
            }
        }
    }
    Ok(Kernel1 { nodes: k, values })
}

/// `γ^(1) = ½ Γ − det(Gram)` (with `μ(X) = 1`).
pub fn gamma1(phi: &WaveFunction, space: &MeasuredSpace) -> Result<Kernel1> {
    let mut kernel = big_gamma(phi, space)?;
    let offset = gram_det(phi, space)?;
    for v in &mut kernel.values {
        *v = 0.5 * *v - offset;
    }
    Ok(kernel)
}

/// `Σ_j φ̃_j(x') φ̃_j(x)`, the value of `γ^(1)` for orthonormal centered
/// components.
pub fn gamma1_orbital_sum(phi: &WaveFunction, space: &MeasuredSpace) -> Result<Kernel1> {
    let centered = center(phi, space)?;
    let v = centered.wave();
    let k = space.len();
    let values = (0..k * k)
        .map(|idx| {
            let (p, q) = (v.value(idx / k), v.value(idx % k));
            p.iter().zip(q).map(|(a, b)| a * b).sum()
        })
        .collect();
    Ok(Kernel1 { nodes: k, values })
}

/// Entry evaluator for `γ^(2)(x'_1, x'_2; x_1, x_2)`.
#[derive(Debug, Clone)]
pub struct Gamma2 {
    centered: WaveFunction,
    weights: Vec<f64>,
}

impl Gamma2 {
    pub fn new(phi: &WaveFunction, space: &MeasuredSpace) -> Result<Self> {
        check_nodes(phi, space)?;
        require_plane(phi)?;
        Ok(Self { centered: center(phi, space)?.centered, weights: space.weights().to_vec() })
    }

    pub fn nodes(&self) -> usize {
        self.weights.len()
    }

    /// `∫ Ψ̃(x_0, x_1, x_2) Ψ̃(x_0, x'_1, x'_2) dμ(x_0)`.
    pub fn entry(&self, p1: usize, p2: usize, x1: usize, x2: usize) -> f64 {
        let v = &self.centered;
        let (b, c, bp, cp) = (v.pair(x1), v.pair(x2), v.pair(p1), v.pair(p2));
        self.weights
            .iter()
            .enumerate()
            .map(|(k0, w)| {
                let a = v.pair(k0);
                w * affine2(a, b, c) * affine2(a, bp, cp)
            })
            .sum()
    }

    /// Closed form valid when the centered components are orthonormal:
    /// `Σ_j (φ̃_j(x_1) − φ̃_j(x_2))(φ̃_j(x'_1) − φ̃_j(x'_2)) + det(φ̃(x_1), φ̃(x_2)) det(φ̃(x'_1), φ̃(x'_2))`.
    pub fn reduced_expansion(&self, p1: usize, p2: usize, x1: usize, x2: usize) -> f64 {
        let v = &self.centered;
        let (q1, q2, s1, s2) = (v.pair(x1), v.pair(x2), v.pair(p1), v.pair(p2));
        let dq = sub2(q1, q2);
        let ds = sub2(s1, s2);
        dq[1] * ds[1] + dq[0] * ds[0] + det2(q1, q2) * det2(s1, s2)
    }

    pub fn materialize(&self) -> Result<Kernel2> {
        let k = self.nodes();
        if k > MAX_DENSE_NODES {
            return Err(Error::KernelTooLarge { nodes: k, max: MAX_DENSE_NODES });
        }
        let v = &self.centered;
        let n = k * k;
        let mut values = vec![0.0; n * n];
        let mut column = vec![0.0; n];
        for (k0, w) in self.weights.iter().enumerate() {
            let a = v.pair(k0);
            for (idx, slot) in column.iter_mut().enumerate() {
                *slot = affine2(a, v.pair(idx / k), v.pair(idx % k));
            }
            for (row, &left) in column.iter().enumerate() {
                if left == 0.0 {
                    continue;
                }
                let out = &mut values[row * n..(row + 1) * n];
                for (o, &right) in out.iter_mut().zip(&column) {
                    *o += w * left * right;
                }
            }
        }
        Ok(Kernel2 { nodes: k, values })
    }
}

pub fn gamma2(phi: &WaveFunction, space: &MeasuredSpace) -> Result<Kernel2> {
    Gamma2::new(phi, space)?.materialize()
}

/// Dense `K² × K²` kernel; row `(x'_1, x'_2)` is `x'_1 · K + x'_2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel2 {
    nodes: usize,
    values: Vec<f64>,
}

impl Kernel2 {
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn size(&self) -> usize {
        self.nodes * self.nodes
    }

    pub fn get(&self, p1: usize, p2: usize, x1: usize, x2: usize) -> f64 {
        let k = self.nodes;
        self.values[(p1 * k + p2) * self.size() + x1 * k + x2]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `max |γ(x'; x) − γ(x; x')|`.
    pub fn max_asymmetry(&self) -> f64 {
        let n = self.size();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.values[i * n + j] - self.values[j * n + i]).abs());
            }
        }
        worst
    }

    /// `max |γ(x'_1, x'_2; ·) + γ(x'_2, x'_1; ·)|` over both index pairs.
    pub fn max_pair_symmetry(&self) -> f64 {
        let k = self.nodes;
        let mut worst: f64 = 0.0;
        for p1 in 0..k {
            for p2 in 0..k {
                for x1 in 0..k {
                    for x2 in 0..k {
                        let v = self.get(p1, p2, x1, x2);
                        worst = worst.max((v + self.get(p2, p1, x1, x2)).abs());
                        worst = worst.max((v + self.get(p1, p2, x2, x1)).abs());
                    }
                }
            }
        }
        worst
    }

    /// Ascending eigenvalues of the symmetrized matrix.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let n = self.size();
        let m = DMatrix::from_fn(n, n, |i, j| 0.5 * (self.values[i * n + j] + self.values[j * n + i]));
        let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// Monte Carlo estimates of `⟨Ψ⟩` and `⟨Ψ²⟩` from `samples` node triples
/// drawn from `μ³`, reduced with [`pairwise_sum`].
pub fn sampled_moments<R: Rng + ?Sized>(
    phi: &WaveFunction,
    space: &MeasuredSpace,
    samples: usize,
    rng: &mut R,
) -> Result<(f64, f64)> {
    check_nodes(phi, space)?;
    require_plane(phi)?;
    if samples == 0 {
        return Err(Error::ArgumentCount { expected: 1, found: 0 });
    }
    let mut cumulative = Vec::with_capacity(space.len());
    let mut acc = 0.0;
    for w in space.weights() {
        acc += w;
        cumulative.push(acc);
    }
    let mut first = Vec::with_capacity(samples);
    let mut second = Vec::with_capacity(samples);
    for _ in 0..samples {
        let mut draw = || phi.pair(space.node_at(&cumulative, rng.random::<f64>() * acc));
        let (a, b, c) = (draw(), draw(), draw());
        let value = affine2(a, b, c);
        first.push(value);
        second.push(value * value);
    }
    let n = samples as f64;
    Ok((pairwise_sum(&first) / n, pairwise_sum(&second) / n))
}

/// Smallest eigenvalue of a `K² × K²` kernel, or `None` when it is empty.
pub fn min_eigenvalue(kernel: &Kernel2) -> Option<f64> {
    kernel.eigenvalues().first().copied()
}
