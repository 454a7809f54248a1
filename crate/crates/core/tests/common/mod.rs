#![allow(dead_code)]

use afferm_core::affine_forms::LagrangianTriple;
use afferm_core::collapse::{Morphism2, Spinor, Triple};
use afferm_core::slater::{MeasuredSpace, WaveFunction};
use afferm_core::tensor_core::{c, ComplexScalar, VectorD};
use nalgebra::DMatrix;
use rand::Rng;

pub fn complex<R: Rng>(rng: &mut R) -> ComplexScalar {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn point<R: Rng>(rng: &mut R, d: usize) -> VectorD {
    VectorD::new((0..d).map(|_| complex(rng)).collect()).unwrap()
}

pub fn spinor<R: Rng>(rng: &mut R) -> Spinor {
    [complex(rng), complex(rng)]
}

pub fn triple<R: Rng>(rng: &mut R) -> Triple {
    Triple::new(spinor(rng), spinor(rng), spinor(rng))
}

pub fn morphism<R: Rng>(rng: &mut R) -> Morphism2 {
    Morphism2([[complex(rng), complex(rng)], [complex(rng), complex(rng)]])
}

pub fn space<R: Rng>(rng: &mut R, k: usize) -> MeasuredSpace {
    let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    MeasuredSpace::new(raw.iter().map(|w| w / total).collect()).unwrap()
}

pub fn wave<R: Rng>(rng: &mut R, k: usize) -> WaveFunction {
    let rows: Vec<[f64; 2]> = (0..k).map(|_| [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)]).collect();
    WaveFunction::from_rows(&rows).unwrap()
}

/// Centered components with identity Gram matrix, built by hand from
/// weighted means and a Cholesky whitening.
pub fn orthonormal_wave<R: Rng>(rng: &mut R, space: &MeasuredSpace) -> WaveFunction {
    let k = space.len();
    let raw = wave(rng, k);
    let w = space.weights();
    let mean: Vec<f64> = (0..2).map(|j| (0..k).map(|n| w[n] * raw.value(n)[j]).sum()).collect();
    let centered: Vec<[f64; 2]> = (0..k).map(|n| [raw.value(n)[0] - mean[0], raw.value(n)[1] - mean[1]]).collect();
    let g = DMatrix::from_fn(2, 2, |i, j| (0..k).map(|n| w[n] * centered[n][i] * centered[n][j]).sum::<f64>());
    let l = g.cholesky().expect("generic instance").l();
    let l_inv = l.try_inverse().unwrap();
    let rows: Vec<[f64; 2]> = centered
        .iter()
        .map(|v| {
            let x = &l_inv * nalgebra::Vector2::new(v[0], v[1]);
            [x[0], x[1]]
        })
        .collect();
    WaveFunction::from_rows(&rows).unwrap()
}

pub fn symplectic_matrix(n: usize) -> DMatrix<f64> {
    afferm_core::affine_forms::symplectic_matrix(n)
}

fn random_symmetric<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    (&a + a.transpose()) * 0.5
}

/// Product of shears and a block-diagonal map, all symplectic.
pub fn random_symplectic<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let id = DMatrix::<f64>::identity(n, n);
    let mut upper = DMatrix::identity(2 * n, 2 * n);
    upper.view_mut((0, n), (n, n)).copy_from(&random_symmetric(rng, n));
    let mut lower = DMatrix::identity(2 * n, 2 * n);
    lower.view_mut((n, 0), (n, n)).copy_from(&random_symmetric(rng, n));
    let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0)) + &id * 2.0;
    let a_inv_t = a.clone().try_inverse().unwrap().transpose();
    let mut block = DMatrix::zeros(2 * n, 2 * n);
    block.view_mut((0, 0), (n, n)).copy_from(&a);
    block.view_mut((n, n), (n, n)).copy_from(&a_inv_t);
    upper * lower * block
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0)) + DMatrix::identity(n, n) * 2.5
}

/// Random Lagrangian: image of the `p`-plane under a random symplectic map.
pub fn random_lagrangian<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let s = random_symplectic(rng, n);
    s.columns(0, n).into_owned()
}

pub fn random_lagrangian_triple<R: Rng>(rng: &mut R, n: usize) -> LagrangianTriple {
    LagrangianTriple::new(n, [random_lagrangian(rng, n), random_lagrangian(rng, n), random_lagrangian(rng, n)]).unwrap()
}
