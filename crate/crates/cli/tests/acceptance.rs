//! Acceptance criteria 1-12. Each test prints one `criterion N: PASS|FAIL`
//! line; run with `--nocapture` to see them.

use std::process::Command;
use std::time::{Duration, Instant};

use afferm::sample;
use afferm_core::affine_forms::{
    affine_det, antisymmetrize_generator, conjecture_nullspace, kashiwara_index, laplace_expand, LagrangianTriple,
    MultiAffineForm, PointConfig,
};
use afferm_core::collapse::{
    collapse_with_morphism, embed, lambda, omega1, quotient, rho_trace_a, rho_trace_ac, theta, tr1, Spinor, Triple,
};
use afferm_core::slater::{
    basis_state, exchange_operator, gamma1, gamma2, min_eigenvalue, one_point, s_squared_expectation,
    symmetric_m_identity, two_point, MeasuredSpace, WaveFunction,
};
use afferm_core::tensor_core::{all_permutations, c, r, ComplexScalar, VectorD};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(n: u32, title: &str, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("criterion {n:>2}: {status}  {title} ({detail})");
    assert!(ok, "criterion {n} failed: {title} ({detail})");
}

fn det2(p: &Spinor, q: &Spinor) -> ComplexScalar {
    p[0] * q[1] - p[1] * q[0]
}

fn sub(p: &Spinor, q: &Spinor) -> Spinor {
    [p[0] - q[0], p[1] - q[1]]
}

/// Leibniz formula, independent of the elimination and Laplace routines.
fn leibniz(m: &DMatrix<ComplexScalar>) -> ComplexScalar {
    let n = m.nrows();
    all_permutations(n).iter().map(|p| (0..n).fold(r(f64::from(p.sign())), |acc, i| acc * m[(i, p.apply(i))])).sum()
}

#[test]
fn criterion_01_collapse_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let triples: Vec<Triple> = (0..1000).map(|_| sample::triple(&mut rng)).collect();
    let start = Instant::now();
    let mut worst = 0.0f64;
    for t in &triples {
        let z = tr1(&theta(&lambda(&embed(t).project()))).unwrap();
        let got = quotient(&z);
        let want = det2(&sub(&t.b, &t.a), &sub(&t.c, &t.a));
        worst = worst.max((got - want).norm() / want.norm());
    }
    let elapsed = start.elapsed();
    let ok = worst <= 1e-10 && elapsed < Duration::from_secs(1);
    verdict(1, "collapse equals det(b-a, c-a)", ok, &format!("max rel err {worst:.2e}, {elapsed:.2?}"));
}

/// Stated literally: `(a,a,c) ∝ (0,1,-1)` with factor `-x_A y_C + x_C y_A`,
/// `(a,b,b) ∝ (1,0,-1)` and `(a,b,a) ∝ (1,-1,0)`, both with factor
/// `x_A y_B - x_B y_A`.
#[test]
fn criterion_02_degenerate_directions() {
    let u = [0.0, 1.0, -1.0];
    let v = [1.0, 0.0, -1.0];
    let w = [1.0, -1.0, 0.0];
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let residual = |z: [ComplexScalar; 3], f: ComplexScalar, dir: [f64; 3]| {
        (0..3).map(|k| (z[k] - f * dir[k]).norm()).fold(0.0f64, f64::max)
    };
    let (mut aac, mut abb, mut aba) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let (a, b, cc) = (sample::spinor(&mut rng), sample::spinor(&mut rng), sample::spinor(&mut rng));
        let f_ac = -a[0] * cc[1] + cc[0] * a[1];
        let f_ab = a[0] * b[1] - b[0] * a[1];
        aac = aac.max(residual(omega1(&Triple::new(a, a, cc)).unwrap(), f_ac, u));
        abb = abb.max(residual(omega1(&Triple::new(a, b, b)).unwrap(), f_ab, v));
        aba = aba.max(residual(omega1(&Triple::new(a, b, a)).unwrap(), f_ab, w));
    }
    let relation = (0..3).all(|k| w[k] == v[k] - u[k]);
    let ok = aac <= 1e-12 && abb <= 1e-12 && aba <= 1e-12 && relation;
    verdict(
        2,
        "tr1 on (a,a,c), (a,b,b), (a,b,a) along u, v, w",
        ok,
        &format!("residuals aac {aac:.2e}, abb {abb:.2e}, aba {aba:.2e}; w = v - u: {relation}"),
    );
}

#[test]
fn criterion_03_morphism_covariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let t = sample::triple(&mut rng);
        let s = sample::morphism(&mut rng);
        let det_s = s.0[0][0] * s.0[1][1] - s.0[0][1] * s.0[1][0];
        let want = det_s * det2(&sub(&t.b, &t.a), &sub(&t.c, &t.a));
        let got = collapse_with_morphism(&t, &s).unwrap();
        worst = worst.max((got - want).norm() / want.norm());
    }
    verdict(3, "collapse(sigma t) = det(sigma) collapse(t)", worst <= 1e-9, &format!("max rel err {worst:.2e}"));
}

#[test]
fn criterion_04_partial_traces() {
    let basis: [Spinor; 2] = [[r(1.0), r(0.0)], [r(0.0), r(1.0)]];
    let mut basis_max = 0.0f64;
    for b in &basis {
        for bp in &basis {
            basis_max = basis_max.max(rho_trace_ac(b, bp).norm());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut nonzero = 0;
    for _ in 0..100 {
        let s: Vec<Spinor> = (0..4).map(|_| sample::spinor(&mut rng)).collect();
        if rho_trace_a(&s[0], &s[1], &s[2], &s[3]).norm() > 1e-12 {
            nonzero += 1;
        }
    }
    let amp = |a: &Spinor, b: &Spinor, cc: &Spinor| det2(&sub(b, a), &sub(cc, a));
    let mut closed = 0.0f64;
    for _ in 0..100 {
        let (b, bp) = (sample::spinor(&mut rng), sample::spinor(&mut rng));
        let four_terms: ComplexScalar = basis
            .iter()
            .flat_map(|a| basis.iter().map(move |cc| (a, cc)))
            .map(|(a, cc)| amp(a, &b, cc) * amp(a, &bp, cc))
            .sum();
        let formula = r(2.0) * (b[0] + b[1] - r(1.0)) * (bp[0] + bp[1] - r(1.0));
        closed = closed.max((four_terms - formula).norm()).max((rho_trace_ac(&b, &bp) - formula).norm());
    }
    let ok = basis_max <= 1e-12 && nonzero >= 99 && closed <= 1e-12;
    verdict(
        4,
        "Tr_AC zero on basis, Tr_A generically nonzero, Tr_AC closed form",
        ok,
        &format!("basis max {basis_max:.2e}, nonzero {nonzero}/100, closed form {closed:.2e}"),
    );
}

#[test]
fn criterion_05_affine_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let start = Instant::now();
    let (mut antisym, mut translation, mut expansion) = (0.0f64, 0.0f64, 0.0f64);
    for d in 2..=4 {
        let pts: Vec<VectorD> = (0..=d).map(|_| sample::point(&mut rng, d)).collect();
        let base = affine_det(&PointConfig::new(pts.clone()).unwrap()).unwrap();
        for p in all_permutations(d + 1) {
            let moved = (0..=d).map(|k| pts[p.apply(k)].clone()).collect();
            let v = affine_det(&PointConfig::new(moved).unwrap()).unwrap();
            antisym = antisym.max((v - base * f64::from(p.sign())).norm() / base.norm());
        }
        let shift = sample::point(&mut rng, d).scale(c(3.0, -2.0));
        let shifted = pts.iter().map(|x| x.add(&shift).unwrap()).collect();
        let t = affine_det(&PointConfig::new(shifted).unwrap()).unwrap();
        translation = translation.max((t - base).norm() / base.norm());

        let bordered = DMatrix::from_fn(d + 1, d + 1, |i, j| if i == 0 { r(1.0) } else { pts[j][i - 1] });
        let oracle = leibniz(&bordered);
        expansion = expansion.max((base - oracle).norm() / oracle.norm());
        expansion = expansion.max((laplace_expand(&bordered).unwrap() - oracle).norm() / oracle.norm());
    }
    let elapsed = start.elapsed();
    let ok = antisym <= 1e-10 && translation <= 1e-10 && expansion <= 1e-10 && elapsed < Duration::from_secs(5);
    verdict(
        5,
        "affine_det antisymmetry, translation invariance, coordinate expansion",
        ok,
        &format!("antisym {antisym:.2e}, translation {translation:.2e}, expansion {expansion:.2e}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_06_generator_antisymmetrization() {
    let abc = MultiAffineForm::wedge(3, 3, &[0, 1, 2]).unwrap();
    let out = antisymmetrize_generator(&abc, 4).unwrap();
    let target = MultiAffineForm::affine_det(3).unwrap().scale(-6.0);
    let coeff = out.coefficients().iter().zip(target.coefficients()).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let integral = out.coefficients().iter().all(|x| x.fract() == 0.0);

    // pointwise against -6 det(b-a, c-a, d-a)
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let mut pointwise = 0.0f64;
    for _ in 0..50 {
        let pts: Vec<VectorD> = (0..4).map(|_| sample::point(&mut rng, 3)).collect();
        let m = DMatrix::from_fn(3, 3, |i, j| pts[j + 1][i] - pts[0][i]);
        let want = r(-6.0) * leibniz(&m);
        pointwise = pointwise.max((out.evaluate(&pts).unwrap() - want).norm() / want.norm());
    }
    let ok = coeff <= 1e-12 && integral && pointwise <= 1e-12;
    verdict(
        6,
        "antisymmetrized abc = -6 affine_det on C^3",
        ok,
        &format!("coefficient err {coeff:.2e}, integral {integral}, pointwise {pointwise:.2e}"),
    );
}

#[test]
fn criterion_07_conjecture_nullspace() {
    let deg2 = conjecture_nullspace(2, 3, 2).unwrap();
    let deg1 = conjecture_nullspace(2, 3, 1).unwrap();
    let deg0 = conjecture_nullspace(2, 3, 0).unwrap();
    let residual = deg2.affine_det_residual.unwrap_or(f64::INFINITY);

    // independent: the basis vector is parallel to affine_det's coefficients
    let target = MultiAffineForm::affine_det(2).unwrap();
    let cosine = deg2.basis.first().map_or(0.0, |b| b.dot(&target).abs() / (b.norm() * target.norm()));
    let ok = deg2.dimension == 1
        && residual < 1e-8
        && (1.0 - cosine).abs() < 1e-8
        && deg1.dimension == 0
        && deg0.dimension == 0;
    verdict(
        7,
        "antisymmetric forms for d = 2, m = 3 by degree",
        ok,
        &format!(
            "dims 2:{} 1:{} 0:{}, residual {residual:.2e}, cosine {cosine:.12}",
            deg2.dimension, deg1.dimension, deg0.dimension
        ),
    );
}

fn line(x: f64, y: f64) -> DMatrix<f64> {
    DMatrix::from_column_slice(2, 1, &[x, y])
}

#[test]
fn criterion_08_kashiwara() {
    let t = LagrangianTriple::new(1, [line(1.0, 0.0), line(0.0, 1.0), line(1.0, 1.0)]).unwrap();
    let sig = kashiwara_index(&t);

    // Q by hand: omega(x, y) = 1, omega(y, diag) = -1, omega(diag, x) = -1
    let q = DMatrix::from_row_slice(3, 3, &[0.0, 0.5, -0.5, 0.5, 0.0, -0.5, -0.5, -0.5, 0.0]);
    let mut hand: Vec<f64> = SymmetricEigen::new(q).eigenvalues.iter().copied().collect();
    hand.sort_by(f64::total_cmp);
    let eig_err = hand.iter().zip(&sig.eigenvalues).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let example = sig.signature() == -1 && eig_err < 1e-12;

    let flips = [[1, 0, 2], [0, 2, 1], [2, 1, 0]]
        .iter()
        .all(|&o| kashiwara_index(&t.permuted(o).unwrap()).signature() == -sig.signature());

    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut invariant = true;
    for n in 1..=2 {
        let tri = sample::lagrangian_triple(&mut rng, n);
        let base = kashiwara_index(&tri).signature();
        for _ in 0..20 {
            let s = sample::symplectic(&mut rng, n);
            let j = afferm_core::affine_forms::symplectic_matrix(n);
            assert!((s.transpose() * &j * &s - &j).amax() < 1e-10, "sampled map is not symplectic");
            let g = [sample::invertible(&mut rng, n), sample::invertible(&mut rng, n), sample::invertible(&mut rng, n)];
            let moved = tri.transformed(&s).unwrap().rebased([&g[0], &g[1], &g[2]]).unwrap();
            invariant &= kashiwara_index(&moved).signature() == base;
        }
    }
    verdict(
        8,
        "Kashiwara signature of (x-axis, y-axis, diagonal)",
        example && flips && invariant,
        &format!(
            "signature {}, eigenvalues {:?}, flips {flips}, invariant {invariant}",
            sig.signature(),
            sig.eigenvalues
        ),
    );
}

fn affine2(a: &[f64], b: &[f64], cc: &[f64]) -> f64 {
    (b[0] - a[0]) * (cc[1] - a[1]) - (b[1] - a[1]) * (cc[0] - a[0])
}

/// `(∫Ψ, ∫Ψ²)` by a plain triple loop.
fn moments(phi: &WaveFunction, space: &MeasuredSpace) -> (f64, f64) {
    let w = space.weights();
    let k = w.len();
    let (mut m1, mut m2) = (0.0, 0.0);
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let p = affine2(phi.value(i), phi.value(j), phi.value(l));
                let weight = w[i] * w[j] * w[l];
                m1 += weight * p;
                m2 += weight * p * p;
            }
        }
    }
    (m1, m2)
}

fn gram_by_hand(phi: &WaveFunction, space: &MeasuredSpace) -> f64 {
    let w = space.weights();
    let k = w.len();
    let mean = |j: usize| (0..k).map(|n| w[n] * phi.value(n)[j]).sum::<f64>();
    let (m0, m1) = (mean(0), mean(1));
    let cov = |i: usize, j: usize| {
        (0..k).map(|n| w[n] * (phi.value(n)[i] - [m0, m1][i]) * (phi.value(n)[j] - [m0, m1][j])).sum::<f64>()
    };
    cov(0, 0) * cov(1, 1) - cov(0, 1) * cov(1, 0)
}

#[test]
fn criterion_09_n_point_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let start = Instant::now();
    let (mut one, mut two) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let k = rng.random_range(3..=12);
        let space = sample::space(&mut rng, k);
        let phi = sample::wave(&mut rng, k);
        let scale = (0..k).flat_map(|n| phi.value(n).to_vec()).fold(0.0f64, |m, v| m.max(v.abs()));
        let (m1, m2) = moments(&phi, &space);
        let six_gram = 6.0 * gram_by_hand(&phi, &space);
        one = one.max(one_point(&phi, &space).unwrap().abs() / scale.powi(3)).max(m1.abs() / scale.powi(3));
        two = two
            .max((two_point(&phi, &space).unwrap() - six_gram).abs() / six_gram.abs())
            .max((m2 - six_gram).abs() / six_gram.abs());
    }

    let space = sample::space(&mut rng, 9);
    let ortho = sample::orthonormal_wave(&mut rng, &space);
    let normalized = (two_point(&ortho, &space).unwrap() / 6.0 - 1.0).abs();

    let mut sym = 0.0f64;
    for _ in 0..20 {
        let k = rng.random_range(3..=7);
        let space = sample::space(&mut rng, k);
        let phi = sample::wave(&mut rng, k);
        let raw: Vec<f64> = (0..k * k * k).map(|_| rng.random_range(-1.0..1.0)).collect();
        let m = |i: usize, j: usize, l: usize| {
            let at = |a: usize, b: usize, cc: usize| raw[(a * k + b) * k + cc];
            (at(i, j, l) + at(i, l, j) + at(j, i, l) + at(j, l, i) + at(l, i, j) + at(l, j, i)) / 6.0
        };
        let (lhs, rhs) = symmetric_m_identity(&phi, &space, m).unwrap();
        // right-hand side by hand: ∫ Ψ M Ψ, Ψ translation invariant
        let w = space.weights();
        let mut oracle = 0.0;
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let p = affine2(phi.value(i), phi.value(j), phi.value(l));
                    oracle += w[i] * w[j] * w[l] * m(i, j, l) * p * p;
                }
            }
        }
        sym = sym.max((lhs - rhs).abs() / rhs.abs()).max((rhs - oracle).abs() / oracle.abs());
    }
    let elapsed = start.elapsed();
    let ok = one <= 1e-10 && two <= 1e-9 && normalized <= 1e-9 && sym <= 1e-9 && elapsed < Duration::from_secs(10);
    verdict(
        9,
        "one_point = 0, two_point = 6 det(Gram), symmetric-M identity",
        ok,
        &format!("one {one:.2e}, two {two:.2e}, normalized {normalized:.2e}, symmetric M {sym:.2e}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_10_density_kernels() {
    let k = 6;
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let space = sample::space(&mut rng, k);
    let phi = sample::orthonormal_wave(&mut rng, &space);
    let v = |n: usize| phi.value(n);
    let d2 = |p: &[f64], q: &[f64]| p[0] * q[1] - p[1] * q[0];

    let kernel = gamma2(&phi, &space).unwrap();
    let mut expansion = 0.0f64;
    for p1 in 0..k {
        for p2 in 0..k {
            for x1 in 0..k {
                for x2 in 0..k {
                    let dq = [v(x1)[0] - v(x2)[0], v(x1)[1] - v(x2)[1]];
                    let ds = [v(p1)[0] - v(p2)[0], v(p1)[1] - v(p2)[1]];
                    let want = dq[0] * ds[0] + dq[1] * ds[1] + d2(v(x1), v(x2)) * d2(v(p1), v(p2));
                    let got = kernel.get(p1, p2, x1, x2);
                    expansion = expansion.max((got - want).abs() / want.abs().max(1.0));
                }
            }
        }
    }
    let size = kernel.values().iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut sym = 0.0f64;
    for p1 in 0..k {
        for p2 in 0..k {
            for x1 in 0..k {
                for x2 in 0..k {
                    let e = kernel.get(p1, p2, x1, x2);
                    sym = sym
                        .max((e - kernel.get(x1, x2, p1, p2)).abs())
                        .max((e + kernel.get(p2, p1, x1, x2)).abs())
                        .max((e + kernel.get(p1, p2, x2, x1)).abs());
                }
            }
        }
    }
    sym /= size;
    let min_eig = min_eigenvalue(&kernel).unwrap();

    let g1 = gamma1(&phi, &space).unwrap();
    let mut orbital = 0.0f64;
    for xp in 0..k {
        for x in 0..k {
            let want = v(xp)[0] * v(x)[0] + v(xp)[1] * v(x)[1];
            orbital = orbital.max((g1.get(xp, x) - want).abs() / want.abs().max(1.0));
        }
    }
    // the single-term display phi_1(x') phi_1(x) is not asserted
    let single_term =
        (0..k * k).map(|i| (g1.get(i / k, i % k) - v(i / k)[0] * v(i % k)[0]).abs()).fold(0.0f64, f64::max);
    println!("  note: gamma1 vs single-term display, max deviation {single_term:.3e} (open question, not asserted)");
    let ok = expansion <= 1e-9 && sym <= 1e-12 && min_eig >= -1e-9 && orbital <= 1e-9;
    verdict(
        10,
        "gamma2 closed form, symmetries, PSD; gamma1 orbital sum",
        ok,
        &format!("expansion {expansion:.2e}, symmetry {sym:.2e}, min eigenvalue {min_eig:.2e}, gamma1 {orbital:.2e}"),
    );
}

#[test]
fn criterion_11_spin_operators() {
    let p = exchange_operator();
    let mut swaps = true;
    for i in 0..2 {
        for j in 0..2 {
            let ket = DMatrix::from_vec(4, 1, basis_state(2, 2 * i + j));
            swaps &= &p * ket == DMatrix::from_vec(4, 1, basis_state(2, 2 * j + i));
        }
    }
    let involution = &p * &p == DMatrix::identity(4, 4);
    let mut up = [r(0.0); 8];
    up[0] = r(1.0);
    let quartet = s_squared_expectation(&up).unwrap();
    let mut doublet = [r(0.0); 8];
    doublet[0b010] = r(std::f64::consts::FRAC_1_SQRT_2);
    doublet[0b100] = r(-std::f64::consts::FRAC_1_SQRT_2);
    let pair = s_squared_expectation(&doublet).unwrap();
    let ok = swaps && involution && (quartet - 15.0).abs() <= 1e-12 && (pair - 3.0).abs() <= 1e-12;
    verdict(
        11,
        "exchange operator and total spin",
        ok,
        &format!("swaps {swaps}, P^2 = Id {involution}, <000|S^2|000> = {quartet}, doublet {pair}"),
    );
}

#[test]
fn criterion_12_deterministic_reports() {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_afferm"))
            .args(["verify", "--seed", "4242"])
            .output()
            .expect("binary runs");
        (out.status.code(), out.stdout)
    };
    let (code_a, first) = run();
    let (code_b, second) = run();
    let ok = code_a == Some(0) && code_b == Some(0) && !first.is_empty() && first == second;
    verdict(
        12,
        "verify reports are byte-identical for one seed",
        ok,
        &format!("{} bytes, exit codes {code_a:?} {code_b:?}", first.len()),
    );
}
