//! Random instances for the verification suites.

use afferm_core::affine_forms::LagrangianTriple;
use afferm_core::collapse::{Morphism2, Spinor, Triple};
use afferm_core::slater::{MeasuredSpace, WaveFunction};
use afferm_core::tensor_core::{c, ComplexScalar, VectorD};
use nalgebra::{DMatrix, Vector2};
use rand::Rng;

pub fn complex<R: Rng + ?Sized>(rng: &mut R) -> ComplexScalar {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn point<R: Rng + ?Sized>(rng: &mut R, d: usize) -> VectorD {
    VectorD::new((0..d).map(|_| complex(rng)).collect()).expect("d > 0")
}

pub fn spinor<R: Rng + ?Sized>(rng: &mut R) -> Spinor {
    [complex(rng), complex(rng)]
}

pub fn triple<R: Rng + ?Sized>(rng: &mut R) -> Triple {
    Triple::new(spinor(rng), spinor(rng), spinor(rng))
}

pub fn morphism<R: Rng + ?Sized>(rng: &mut R) -> Morphism2 {
    Morphism2([[complex(rng), complex(rng)], [complex(rng), complex(rng)]])
}

/// Probability weights bounded away from zero.
pub fn space<R: Rng + ?Sized>(rng: &mut R, k: usize) -> MeasuredSpace {
    let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    MeasuredSpace::new(raw.iter().map(|w| w / total).collect()).expect("normalized weights")
}

pub fn wave<R: Rng + ?Sized>(rng: &mut R, k: usize) -> WaveFunction {
    let rows: Vec<[f64; 2]> = (0..k).map(|_| [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)]).collect();
    WaveFunction::from_rows(&rows).expect("two components")
}

/// Centered, with identity Gram matrix under the weights of `space`.
pub fn orthonormal_wave<R: Rng + ?Sized>(rng: &mut R, space: &MeasuredSpace) -> WaveFunction {
    let k = space.len();
    let w = space.weights();
    loop {
        let raw = wave(rng, k);
        let mean: Vec<f64> = (0..2).map(|j| (0..k).map(|n| w[n] * raw.value(n)[j]).sum()).collect();
        let centered: Vec<Vector2<f64>> =
            (0..k).map(|n| Vector2::new(raw.value(n)[0] - mean[0], raw.value(n)[1] - mean[1])).collect();
        let g = DMatrix::from_fn(2, 2, |i, j| (0..k).map(|n| w[n] * centered[n][i] * centered[n][j]).sum::<f64>());
        let Some(chol) = g.cholesky() else { continue };
        let Some(l_inv) = chol.l().try_inverse() else { continue };
        let rows: Vec<[f64; 2]> = centered
            .iter()
            .map(|v| {
                let x = &l_inv * DMatrix::from_column_slice(2, 1, v.as_slice());
                [x[0], x[1]]
            })
            .collect();
        return WaveFunction::from_rows(&rows).expect("two components");
    }
}

fn random_symmetric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    (&a + a.transpose()) * 0.5
}

/// Random symmetric `k × k` matrix.
pub fn symmetric<R: Rng + ?Sized>(rng: &mut R, k: usize) -> DMatrix<f64> {
    random_symmetric(rng, k)
}

pub fn invertible<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0)) + DMatrix::identity(n, n) * 2.5
}

/// Two shears and a block-diagonal `diag(A, A^{-T})`, each symplectic.
pub fn symplectic<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let mut upper = DMatrix::identity(2 * n, 2 * n);
    upper.view_mut((0, n), (n, n)).copy_from(&random_symmetric(rng, n));
    let mut lower = DMatrix::identity(2 * n, 2 * n);
    lower.view_mut((n, 0), (n, n)).copy_from(&random_symmetric(rng, n));
    let a = invertible(rng, n);
    let a_inv_t = a.clone().try_inverse().expect("diagonally dominant").transpose();
    let mut block = DMatrix::zeros(2 * n, 2 * n);
    block.view_mut((0, 0), (n, n)).copy_from(&a);
    block.view_mut((n, n), (n, n)).copy_from(&a_inv_t);
    upper * lower * block
}

pub fn lagrangian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<f64> {
    symplectic(rng, n).columns(0, n).into_owned()
}

pub fn lagrangian_triple<R: Rng + ?Sized>(rng: &mut R, n: usize) -> LagrangianTriple {
    LagrangianTriple::new(n, [lagrangian(rng, n), lagrangian(rng, n), lagrangian(rng, n)])
        .expect("images of a Lagrangian under symplectic maps")
}
