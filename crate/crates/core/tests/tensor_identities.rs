mod common;

use afferm_core::tensor_core::{
    all_permutations, antisymmetrize, determinant, factorial, tensor_product, wedge_scalar, ComplexScalar, DenseTensor,
    VectorD,
};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn product_of(vs: &[VectorD]) -> DenseTensor {
    let d = vs[0].dim();
    vs.iter().fold(DenseTensor::scalar(d, ComplexScalar::new(1.0, 0.0)).unwrap(), |acc, v| {
        tensor_product(&acc, &DenseTensor::from_vector(v)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_scalar_is_d_factorial_times_antisymmetrized_product(seed in any::<u64>(), d in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vs: Vec<VectorD> = (0..d).map(|_| common::point(&mut rng, d)).collect();
        let anti = antisymmetrize(&product_of(&vs)).unwrap();
        let diagonal: Vec<usize> = (0..d).collect();
        let via_tensor = anti.get(&diagonal) * factorial(d) as f64;
        let det = wedge_scalar(&vs).unwrap();
        let scale: f64 = vs.iter().map(VectorD::norm).product();
        prop_assert!((det - via_tensor).norm() <= 1e-10 * scale.max(1e-300));
    }

    #[test]
    fn wedge_scalar_flips_under_column_swap(seed in any::<u64>(), d in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut vs: Vec<VectorD> = (0..d).map(|_| common::point(&mut rng, d)).collect();
        let before = wedge_scalar(&vs).unwrap();
        vs.swap(0, d - 1);
        let after = wedge_scalar(&vs).unwrap();
        prop_assert!((before + after).norm() <= 1e-12 * before.norm().max(1.0));
    }

    #[test]
    fn elimination_matches_lu_determinant(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = DMatrix::from_fn(n, n, |_, _| common::complex(&mut rng));
        let ours = determinant(n, m.transpose().iter().copied().collect());
        let lu = m.determinant();
        prop_assert!((ours - lu).norm() <= 1e-10 * lu.norm().max(1.0));
    }
}

#[test]
fn antisymmetrized_slot_permutations_for_all_small_degrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for degree in 0..=4 {
        for dim in 1..=3 {
            let vs: Vec<VectorD> = (0..degree).map(|_| common::point(&mut rng, dim)).collect();
            let base = if degree == 0 {
                DenseTensor::scalar(dim, ComplexScalar::new(0.7, -0.2)).unwrap()
            } else {
                product_of(&vs)
            };
            let a = antisymmetrize(&base).unwrap();
            for sigma in all_permutations(degree) {
                let permuted = a.permute_slots(&sigma).unwrap();
                let diff = permuted.sub(&a.scale(ComplexScalar::new(f64::from(sigma.sign()), 0.0))).unwrap();
                assert!(diff.norm() <= 1e-12 * base.norm());
            }
        }
    }
}
