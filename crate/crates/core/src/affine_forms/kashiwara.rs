//! Symplectic affine form `Q(x_1, x_2, x_3) = ω(x_1, x_2) + ω(x_2, x_3) + ω(x_3, x_1)`
//! on `L_1 ⊕ L_2 ⊕ L_3` and its signature.
//!
//! Convention: on `R^{2n}` with coordinates `(p, q)`,
//! `ω((p, q), (p', q')) = Σ p_i q'_i − q_i p'_i`, i.e. `ω(x, y) = xᵀ J y` with
//! `J = [[0, I], [−I, 0]]`. With this convention the triple
//! (x-axis, y-axis, diagonal) in `R^2` has signature `−1`.

use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// `|ω(u, v)| ≤ LAGRANGIAN_TOL · max(1, ‖u‖‖v‖)` within one subspace.
pub const LAGRANGIAN_TOL: f64 = 1e-10;
/// Eigenvalues below `SIGNATURE_ZERO_TOL · max|λ|` count as zero.
pub const SIGNATURE_ZERO_TOL: f64 = 1e-8;

/// The standard symplectic form on `R^{2n}`.
pub fn symplectic_form(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() / 2;
    (0..n).map(|i| x[i] * y[n + i] - x[n + i] * y[i]).sum()
}

/// `J` such that `ω(x, y) = xᵀ J y`.
pub fn symplectic_matrix(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = 1.0;
        j[(n + i, i)] = -1.0;
    }
    j
}

/// Three Lagrangian subspaces of `R^{2n}`, each given by a `2n × n` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangianTriple {
    n: usize,
    bases: [DMatrix<f64>; 3],
}

impl LagrangianTriple {
    pub fn new(n: usize, bases: [DMatrix<f64>; 3]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVector);
        }
        let j = symplectic_matrix(n);
        for (s, basis) in bases.iter().enumerate() {
            if basis.nrows() != 2 * n {
                return Err(Error::DimensionMismatch { expected: 2 * n, found: basis.nrows() });
            }
            if basis.ncols() != n {
                return Err(Error::DimensionMismatch { expected: n, found: basis.ncols() });
            }
            let sv = basis.singular_values();
            let max = sv.iter().copied().fold(0.0, f64::max);
            let rank = sv.iter().filter(|&&x| x > 1e-10 * max).count();
            if max == 0.0 || rank < n {
                return Err(Error::RankDeficient {
                    subspace: s + 1,
                    rank: if max == 0.0 { 0 } else { rank },
                    expected: n,
                });
            }
            let gram = basis.transpose() * &j * basis;
            for a in 0..n {
                for b in 0..n {
                    let scale = (basis.column(a).norm() * basis.column(b).norm()).max(1.0);
                    if gram[(a, b)].abs() > LAGRANGIAN_TOL * scale {
                        return Err(Error::NotLagrangian { subspace: s + 1, i: a, j: b, residual: gram[(a, b)] });
                    }
                }
            }
        }
        Ok(Self { n, bases })
    }

    pub fn from_rows(n: usize, rows: [&[Vec<f64>]; 3]) -> Result<Self> {
        let convert = |rs: &[Vec<f64>]| -> Result<DMatrix<f64>> {
            if rs.len() != 2 * n {
                return Err(Error::DimensionMismatch { expected: 2 * n, found: rs.len() });
            }
            if let Some(bad) = rs.iter().find(|r| r.len() != n) {
                return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
            }
            Ok(DMatrix::from_fn(2 * n, n, |i, k| rs[i][k]))
        };
        Self::new(n, [convert(rows[0])?, convert(rows[1])?, convert(rows[2])?])
    }

    pub fn half_dim(&self) -> usize {
        self.n
    }

    pub fn bases(&self) -> &[DMatrix<f64>; 3] {
        &self.bases
    }

    /// `(L_{σ(1)}, L_{σ(2)}, L_{σ(3)})`.
    pub fn permuted(&self, order: [usize; 3]) -> Result<Self> {
        Self::new(self.n, order.map(|k| self.bases[k].clone()))
    }

    /// Applies a linear map of `R^{2n}` to all three subspaces.
    pub fn transformed(&self, map: &DMatrix<f64>) -> Result<Self> {
        Self::new(self.n, [map * &self.bases[0], map * &self.bases[1], map * &self.bases[2]])
    }

    /// Changes the basis of each subspace: `L_i ↦ L_i G_i`.
    pub fn rebased(&self, changes: [&DMatrix<f64>; 3]) -> Result<Self> {
        Self::new(self.n, [&self.bases[0] * changes[0], &self.bases[1] * changes[1], &self.bases[2] * changes[2]])
    }
}

/// Symmetric matrix of `Q` in the provided bases.
pub fn kashiwara_q(t: &LagrangianTriple) -> DMatrix<f64> {
    let n = t.n;
    let j = symplectic_matrix(n);
    let mut b = DMatrix::zeros(3 * n, 3 * n);
    for (row, col) in [(0, 1), (1, 2), (2, 0)] {
        let block = t.bases[row].transpose() * &j * &t.bases[col];
        b.view_mut((row * n, col * n), (n, n)).copy_from(&block);
    }
    (&b + b.transpose()) * 0.5
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignatureResult {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
}

impl SignatureResult {
    pub fn signature(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }
}

pub fn kashiwara_index(t: &LagrangianTriple) -> SignatureResult {
    let q = kashiwara_q(t);
    let mut eigenvalues: Vec<f64> = SymmetricEigen::new(q).eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    let max = eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max);
    let threshold = SIGNATURE_ZERO_TOL * max;
    let n_plus = eigenvalues.iter().filter(|&&l| l > threshold).count();
    let n_minus = eigenvalues.iter().filter(|&&l| l < -threshold).count();
    SignatureResult { n_plus, n_minus, n_zero: eigenvalues.len() - n_plus - n_minus, eigenvalues }
}
