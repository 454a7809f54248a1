//! The `verify` suite: every module invariant checked on seeded random
//! instances.

use afferm_core::affine_forms::{
    affine_det, antisymmetrize_generator, conjecture_nullspace, is_affinely_dependent, kashiwara_index, laplace_expand,
    nondegeneracy_probe, AffineDeterminant, LagrangianTriple, MultiAffineForm, PointConfig, ProbeConfig,
};
use afferm_core::collapse::{
    collapse, collapse_with_morphism, computational_basis, det2, embed, lambda, omega1, rho_trace_a,
    rho_trace_a_basis_matrix, rho_trace_ac, theta, ThetaBlocks, Triple, U, V, W,
};
use afferm_core::slater::{
    basis_state, center, exchange_operator, gamma1, gamma1_orbital_sum, gamma2, gram_det, min_eigenvalue, one_point,
    psi, s_squared_expectation, symmetric_m_identity, Gamma2, WaveFunction,
};
use afferm_core::tensor_core::{all_permutations, c, determinant, r, wedge_scalar, ComplexScalar, VectorD};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;
use crate::report::{Report, Tolerances};
use crate::sample;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 1729;

pub const DEFAULT_TOLERANCES: &[(&str, f64)] = &[
    ("exact", 0.0),
    ("tensor", 1e-12),
    ("collapse", 1e-10),
    ("theta", 1e-12),
    ("tr1", 1e-12),
    ("morphism", 1e-9),
    ("trace", 1e-12),
    ("trace_zero_fraction", 0.01),
    ("affine", 1e-10),
    ("laplace", 1e-10),
    ("generator", 1e-12),
    ("nullspace", 1e-8),
    ("one_point", 1e-10),
    ("two_point", 1e-9),
    ("symmetric_m", 1e-9),
    ("centering", 1e-10),
    ("gamma1", 1e-9),
    ("gamma2", 1e-9),
    ("oracle", 1e-10),
    ("symmetry", 1e-12),
    ("psd", 1e-9),
    ("spin", 1e-12),
];

pub fn tolerances(overrides: &[(String, f64)]) -> Result<Tolerances, CliError> {
    let mut tol = Tolerances::new(DEFAULT_TOLERANCES);
    tol.apply(overrides)?;
    Ok(tol)
}

/// Independent stream per suite so adding checks to one suite leaves the
/// others' instances unchanged.
fn suite_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `|got − want| / max(|want|, floor)`.
fn rel(got: ComplexScalar, want: ComplexScalar, floor: f64) -> f64 {
    (got - want).norm() / want.norm().max(floor)
}

fn rel_f(got: f64, want: f64, floor: f64) -> f64 {
    (got - want).abs() / want.abs().max(floor)
}

fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn run(seed: u64, tol: &Tolerances) -> Result<Report, CliError> {
    let mut report = Report::new("verify", Some(seed));
    tensor_suite(&mut report, &mut suite_rng(seed, 0), tol)?;
    collapse_suite(&mut report, &mut suite_rng(seed, 1), tol)?;
    affine_suite(&mut report, &mut suite_rng(seed, 2), tol)?;
    kashiwara_suite(&mut report, &mut suite_rng(seed, 3), tol)?;
    slater_suite(&mut report, &mut suite_rng(seed, 4), tol)?;
    spin_suite(&mut report, tol)?;
    Ok(report)
}

fn tensor_suite(report: &mut Report, rng: &mut ChaCha8Rng, tol: &Tolerances) -> Result<(), CliError> {
    let mut lu = 0.0f64;
    let mut wedge = 0.0f64;
    for _ in 0..50 {
        let n = rng.random_range(2..=5);
        let cols: Vec<VectorD> = (0..n).map(|_| sample::point(rng, n)).collect();
        let m = DMatrix::from_fn(n, n, |i, j| cols[j][i]);
        let want = m.clone().lu().determinant();
        let row_major: Vec<ComplexScalar> = m.transpose().iter().copied().collect();
        lu = lu.max(rel(determinant(n, row_major), want, 1e-6));
        wedge = wedge.max(rel(wedge_scalar(&cols)?, want, 1e-6));
    }
    report.check("tensor.determinant_vs_lu", lu, tol.get("tensor"), "elimination determinant agrees with LU");
    report.check("tensor.wedge_is_determinant", wedge, tol.get("tensor"), "top wedge equals determinant");
    Ok(())
}

fn collapse_suite(report: &mut Report, rng: &mut ChaCha8Rng, tol: &Tolerances) -> Result<(), CliError> {
    let mut pipeline = 0.0f64;
    let mut closed = 0.0f64;
    let mut support_failures = 0usize;
    let mut round_trip = 0usize;
    for _ in 0..1000 {
        let t = sample::triple(rng);
        let want = affine_det(&triple_config(&t))?;
        pipeline = pipeline.max(rel(collapse(&t)?, want, 1e-6 * t.norm().powi(2)));

        if embed(&t).project() != t {
            round_trip += 1;
        }

        let tb = theta(&lambda(&t));
        let cf = ThetaBlocks::closed_form(&t);
        for k in 0..3 {
            for s in 0..6 {
                closed = closed.max((tb.x_blocks[k][s] - cf.x_blocks[k][s]).norm());
                closed = closed.max((tb.y_blocks[k][s] - cf.y_blocks[k][s]).norm());
            }
        }
        if !tb.has_block_support() {
            support_failures += 1;
        }
    }
    report.check(
        "collapse.pipeline",
        pipeline,
        tol.get("collapse"),
        "embed, lambda, theta, tr1 and sum equal det(b-a, c-a)",
    );
    report.check("collapse.embed_round_trip", round_trip as f64, tol.get("exact"), "projection inverts the embedding");
    report.check("collapse.theta_closed_form", closed, tol.get("theta"), "theta blocks match the closed form");
    report.check(
        "collapse.theta_block_support",
        support_failures as f64,
        tol.get("exact"),
        "block k has a zero slot pair at position 2-k",
    );

    let (mut aac, mut abb, mut aba) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let (a, b, cc) = (sample::spinor(rng), sample::spinor(rng), sample::spinor(rng));
        aac = aac.max(direction_residual(omega1(&Triple::new(a, a, cc))?, det2(&cc, &a), U));
        abb = abb.max(direction_residual(omega1(&Triple::new(a, b, b))?, det2(&a, &b), W));
        aba = aba.max(direction_residual(omega1(&Triple::new(a, b, a))?, det2(&a, &b), V));
    }
    report.check("collapse.tr1_aac", aac, tol.get("tr1"), "tr1(a,a,c) = det(c,a) (0,1,-1)");
    report.check("collapse.tr1_abb", abb, tol.get("tr1"), "tr1(a,b,b) = det(a,b) (1,-1,0)");
    report.check("collapse.tr1_aba", aba, tol.get("tr1"), "tr1(a,b,a) = det(a,b) (1,0,-1)");
    let diff = (0..3).map(|k| (W[k] - (V[k] - U[k])).abs()).fold(0.0, f64::max);
    report.check("collapse.direction_relation", diff, tol.get("exact"), "(1,-1,0) = (1,0,-1) - (0,1,-1)");

    let mut morph = 0.0f64;
    for _ in 0..500 {
        let t = sample::triple(rng);
        let sigma = sample::morphism(rng);
        let want = sigma.det() * collapse(&t)?;
        let floor = 1e-6 * t.norm().powi(2) * sigma.det().norm().max(1e-3);
        morph = morph.max(rel(collapse_with_morphism(&t, &sigma)?, want, floor));
    }
    report.check(
        "collapse.morphism_covariance",
        morph,
        tol.get("morphism"),
        "collapse(sigma t) = det(sigma) collapse(t)",
    );

    let basis = computational_basis();
    let mut ac_basis = 0.0f64;
    for b in &basis {
        for bp in &basis {
            ac_basis = ac_basis.max(rho_trace_ac(b, bp).norm());
        }
    }
    report.check("collapse.trace_ac_basis", ac_basis, tol.get("trace"), "Tr_AC vanishes on basis pairs");

    let mut ac_closed = 0.0f64;
    let mut zeros = 0usize;
    for _ in 0..100 {
        let (b, bp) = (sample::spinor(rng), sample::spinor(rng));
        let want = r(2.0) * (b[0] + b[1] - r(1.0)) * (bp[0] + bp[1] - r(1.0));
        ac_closed = ac_closed.max((rho_trace_ac(&b, &bp) - want).norm());
        let (cc, cp) = (sample::spinor(rng), sample::spinor(rng));
        if rho_trace_a(&b, &cc, &bp, &cp).norm() <= 1e-12 {
            zeros += 1;
        }
    }
    report.check("collapse.trace_ac_closed_form", ac_closed, tol.get("trace"), "Tr_AC = 2(b1+b2-1)(b1'+b2'-1)");
    report.check(
        "collapse.trace_a_generic_nonzero",
        zeros as f64 / 100.0,
        tol.get("trace_zero_fraction"),
        "Tr_A is nonzero at generic arguments",
    );
    let basis_matrix = rho_trace_a_basis_matrix().iter().fold(0.0f64, |m, z| m.max(z.norm()));
    report.check("collapse.trace_a_basis", basis_matrix, tol.get("trace"), "Tr_A vanishes on basis arguments");
    Ok(())
}

fn triple_config(t: &Triple) -> PointConfig {
    let pts = t.particles().iter().map(|p| VectorD::new(p.to_vec()).expect("two entries")).collect();
    PointConfig::new(pts).expect("three points in the plane")
}

fn direction_residual(z: [ComplexScalar; 3], factor: ComplexScalar, dir: [f64; 3]) -> f64 {
    (0..3).map(|k| (z[k] - factor * dir[k]).norm()).fold(0.0, f64::max)
}

fn affine_suite(report: &mut Report, rng: &mut ChaCha8Rng, tol: &Tolerances) -> Result<(), CliError> {
    let mut antisym = 0.0f64;
    let mut translation = 0.0f64;
    let mut laplace = 0.0f64;
    for d in 2..=4 {
        let pts: Vec<VectorD> = (0..=d).map(|_| sample::point(rng, d)).collect();
        let base = affine_det(&PointConfig::new(pts.clone())?)?;
        for sigma in all_permutations(d + 1) {
            let permuted = (0..=d).map(|k| pts[sigma.apply(k)].clone()).collect();
            let v = affine_det(&PointConfig::new(permuted)?)?;
            antisym = antisym.max(rel(v, base * f64::from(sigma.sign()), 1e-6));
        }
        for _ in 0..20 {
            let pts: Vec<VectorD> = (0..=d).map(|_| sample::point(rng, d)).collect();
            let shift = sample::point(rng, d).scale(c(5.0, 0.0));
            let moved = pts.iter().map(|p| p.add(&shift)).collect::<Result<Vec<_>, _>>()?;
            let a = affine_det(&PointConfig::new(pts.clone())?)?;
            translation = translation.max(rel(affine_det(&PointConfig::new(moved)?)?, a, 1e-6));

            // bordered matrix with a row of ones on top
            let bordered = DMatrix::from_fn(d + 1, d + 1, |i, j| if i == 0 { r(1.0) } else { pts[j][i - 1] });
            laplace = laplace.max(rel(laplace_expand(&bordered)?, a, 1e-6));
        }
    }
    report.check("affine.antisymmetry", antisym, tol.get("affine"), "affine_det is alternating, d = 2, 3, 4");
    report.check("affine.translation", translation, tol.get("affine"), "affine_det is translation invariant");
    report.check(
        "affine.coordinate_expansion",
        laplace,
        tol.get("laplace"),
        "cofactor expansion of the bordered matrix",
    );

    let mut mismatches = 0usize;
    for d in 2..=3 {
        for _ in 0..50 {
            let pts: Vec<VectorD> = (0..=d).map(|_| sample::point(rng, d)).collect();
            let cfg = PointConfig::new(pts)?;
            if is_affinely_dependent(&cfg) || affine_det(&cfg)?.norm() <= 1e-10 {
                mismatches += 1;
            }
            let mut dep: Vec<VectorD> = (0..d).map(|_| sample::point(rng, d)).collect();
            let mut combo = dep[0].clone();
            for p in &dep[1..] {
                combo = combo.add(&p.sub(&dep[0])?.scale(r(rng.random_range(-1.0..1.0))))?;
            }
            dep.push(combo);
            let cfg = PointConfig::new(dep)?;
            if !is_affinely_dependent(&cfg) || affine_det(&cfg)?.norm() > 1e-10 {
                mismatches += 1;
            }
        }
    }
    report.check(
        "affine.dependence",
        mismatches as f64,
        tol.get("exact"),
        "affine_det vanishes iff the points are affinely dependent",
    );

    let probe = nondegeneracy_probe(
        &AffineDeterminant { dim: 2 },
        &ProbeConfig { trials: 200, ..ProbeConfig::default() },
        rng,
    )?;
    report.check(
        "affine.nondegeneracy_probe",
        if probe.is_degenerate() { 1.0 } else { 0.0 },
        tol.get("exact"),
        "no degenerate configuration found for affine_det",
    );

    let ab = antisymmetrize_generator(&MultiAffineForm::wedge(2, 2, &[0, 1])?, 3)?;
    let want2 = MultiAffineForm::affine_det(2)?.scale(2.0);
    report.check(
        "affine.generator_ab",
        ab.sub(&want2)?.norm(),
        tol.get("generator"),
        "antisymmetrized ab = 2 affine_det on C^2",
    );
    let abc = antisymmetrize_generator(&MultiAffineForm::wedge(3, 3, &[0, 1, 2])?, 4)?;
    let want3 = MultiAffineForm::affine_det(3)?.scale(-6.0);
    report.check(
        "affine.generator_abc",
        abc.sub(&want3)?.norm(),
        tol.get("generator"),
        "antisymmetrized abc = -6 affine_det on C^3",
    );

    let deg2 = conjecture_nullspace(2, 3, 2)?;
    report.check(
        "affine.nullspace_d2_m3_degree2",
        (deg2.dimension as f64 - 1.0).abs(),
        tol.get("exact"),
        "one antisymmetric form of degree 2 in three points of C^2",
    );
    report.check(
        "affine.nullspace_contains_affine_det",
        deg2.affine_det_residual.unwrap_or(f64::INFINITY),
        tol.get("nullspace"),
        "affine_det spans the degree-2 sector",
    );
    for degree in [1, 0] {
        let rep = conjecture_nullspace(2, 3, degree)?;
        report.check(
            &format!("affine.nullspace_d2_m3_degree{degree}"),
            rep.dimension as f64,
            tol.get("exact"),
            "no antisymmetric forms of lower degree",
        );
    }
    Ok(())
}

fn kashiwara_suite(report: &mut Report, rng: &mut ChaCha8Rng, tol: &Tolerances) -> Result<(), CliError> {
    let example = axes_and_diagonal();
    let sig = kashiwara_index(&example).signature();
    report.check(
        "kashiwara.example",
        (sig + 1).abs() as f64,
        tol.get("exact"),
        "(x-axis, y-axis, diagonal) has signature -1",
    );
    let mut flips = 0i64;
    for order in [[1, 0, 2], [0, 2, 1], [2, 1, 0]] {
        flips = flips.max((kashiwara_index(&example.permuted(order)?).signature() - 1).abs());
    }
    for order in [[1, 2, 0], [2, 0, 1]] {
        flips = flips.max((kashiwara_index(&example.permuted(order)?).signature() + 1).abs());
    }
    report.check(
        "kashiwara.permutation_parity",
        flips as f64,
        tol.get("exact"),
        "odd permutations negate the signature, even ones keep it",
    );

    let mut drift = 0i64;
    for n in 1..=2 {
        for _ in 0..20 {
            let t = sample::lagrangian_triple(rng, n);
            let base = kashiwara_index(&t).signature();
            let moved = t.transformed(&sample::symplectic(rng, n))?;
            drift = drift.max((kashiwara_index(&moved).signature() - base).abs());
            let g = [sample::invertible(rng, n), sample::invertible(rng, n), sample::invertible(rng, n)];
            let rebased = t.rebased([&g[0], &g[1], &g[2]])?;
            drift = drift.max((kashiwara_index(&rebased).signature() - base).abs());
        }
    }
    report.check(
        "kashiwara.invariance",
        drift as f64,
        tol.get("exact"),
        "signature invariant under symplectic maps and basis changes",
    );
    Ok(())
}

/// `(x-axis, y-axis, diagonal)` in `R²`.
pub fn axes_and_diagonal() -> LagrangianTriple {
    let line = |x: f64, y: f64| DMatrix::from_column_slice(2, 1, &[x, y]);
    LagrangianTriple::new(1, [line(1.0, 0.0), line(0.0, 1.0), line(1.0, 1.0)]).expect("lines in the plane")
}

fn wave_scale(phi: &WaveFunction) -> f64 {
    (0..phi.nodes()).flat_map(|k| phi.value(k).to_vec()).fold(1.0f64, |m, v| m.max(v.abs()))
}

fn slater_suite(report: &mut Report, rng: &mut ChaCha8Rng, tol: &Tolerances) -> Result<(), CliError> {
    let (mut one, mut two, mut centering) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..50 {
        let k = rng.random_range(3..=12);
        let space = sample::space(rng, k);
        let phi = sample::wave(rng, k);
        let scale = wave_scale(&phi);
        let gd = gram_det(&phi, &space)?;
        one = one.max(one_point(&phi, &space)?.abs() / scale.powi(3));
        let two_pt = afferm_core::slater::two_point(&phi, &space)?;
        two = two.max(rel_f(two_pt, 6.0 * gd, 1e-6 * scale.powi(4)));

        let centered = center(&phi, &space)?;
        let cw = centered.wave();
        let labels = [0, 1, 2];
        centering = centering.max(rel_f(psi(cw, &labels)?, psi(&phi, &labels)?, 1e-6 * scale.powi(2)));
        centering = centering.max(rel_f(afferm_core::slater::two_point(cw, &space)?, two_pt, 1e-6 * scale.powi(4)));
        centering = centering.max((one_point(cw, &space)?).abs() / scale.powi(3));
    }
    report.check("slater.one_point", one, tol.get("one_point"), "<Psi> = 0");
    report.check("slater.two_point", two, tol.get("two_point"), "<Psi^2> = 6 det(Gram)");
    report.check("slater.centering", centering, tol.get("centering"), "centering leaves psi and its moments unchanged");

    let space = sample::space(rng, 8);
    let ortho = sample::orthonormal_wave(rng, &space);
    let normalized = afferm_core::slater::two_point(&ortho, &space)? / 6.0;
    report.check(
        "slater.two_point_normalized",
        (normalized - 1.0).abs(),
        tol.get("two_point"),
        "<Psi^2>/6 = 1 for orthonormal components",
    );

    let mut sym_m = 0.0f64;
    for _ in 0..20 {
        let k = rng.random_range(3..=6);
        let space = sample::space(rng, k);
        let phi = sample::wave(rng, k);
        let m3 = random_symmetric_tensor(rng, k);
        let (lhs, rhs) = symmetric_m_identity(&phi, &space, |i, j, l| m3[(i * k + j) * k + l])?;
        sym_m = sym_m.max(rel_f(lhs, rhs, 1e-6));
    }
    report.check("slater.symmetric_m", sym_m, tol.get("symmetric_m"), "3<ab M (ab+bc+ca)> = <(ab+bc+ca) M (ab+bc+ca)>");

    let k = 6;
    let space = sample::space(rng, k);
    let phi = sample::orthonormal_wave(rng, &space);
    let g1 = gamma1(&phi, &space)?;
    let orbital = gamma1_orbital_sum(&phi, &space)?;
    let g1_err = g1.values().iter().zip(orbital.values()).fold(0.0f64, |m, (a, b)| m.max(rel_f(*a, *b, 1.0)));
    report.check("slater.gamma1_orbital_sum", g1_err, tol.get("gamma1"), "gamma1(x',x) = sum_j phi_j(x') phi_j(x)");

    let g2 = Gamma2::new(&phi, &space)?;
    let mut expansion = 0.0f64;
    for p1 in 0..k {
        for p2 in 0..k {
            for x1 in 0..k {
                for x2 in 0..k {
                    let (got, want) = (g2.entry(p1, p2, x1, x2), g2.reduced_expansion(p1, p2, x1, x2));
                    expansion = expansion.max(rel_f(got, want, 1.0));
                }
            }
        }
    }
    report.check("slater.gamma2_expansion", expansion, tol.get("gamma2"), "gamma2 = sum_j D_j D'_j + det det'");

    let kernel = gamma2(&phi, &space)?;
    let size = max_abs(kernel.values()).max(f64::MIN_POSITIVE);
    report.check(
        "slater.gamma2_symmetry",
        kernel.max_asymmetry() / size,
        tol.get("symmetry"),
        "gamma2 is a symmetric matrix",
    );
    report.check(
        "slater.gamma2_pair_antisymmetry",
        kernel.max_pair_symmetry() / size,
        tol.get("symmetry"),
        "gamma2 is antisymmetric within each pair",
    );
    let g1_size = max_abs(g1.values()).max(f64::MIN_POSITIVE);
    report.check("slater.gamma1_symmetry", g1.max_asymmetry() / g1_size, tol.get("symmetry"), "gamma1 is symmetric");
    let floor = min_eigenvalue(&kernel).unwrap_or(0.0);
    report.check("slater.gamma2_psd", (-floor).max(0.0), tol.get("psd"), "gamma2 is positive semidefinite");

    let generic = sample::wave(rng, 5);
    let gspace = sample::space(rng, 5);
    let oracle = oracle_gamma(&generic, &gspace)?;
    let direct = gamma1(&generic, &gspace)?;
    let gd = gram_det(&generic, &gspace)?;
    let mut oracle_err = 0.0f64;
    for (got, raw) in direct.values().iter().zip(&oracle) {
        oracle_err = oracle_err.max(rel_f(*got, 0.5 * raw - gd, 1.0));
    }
    report.check(
        "slater.gamma1_generic_oracle",
        oracle_err,
        tol.get("oracle"),
        "gamma1 agrees with weighted sums of generic affine determinants",
    );
    Ok(())
}

fn random_symmetric_tensor(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..k * k * k).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut out = vec![0.0; k * k * k];
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let perms = [(i, j, l), (i, l, j), (j, i, l), (j, l, i), (l, i, j), (l, j, i)];
                let s: f64 = perms.iter().map(|&(a, b, cc)| raw[(a * k + b) * k + cc]).sum();
                out[(i * k + j) * k + l] = s / 6.0;
            }
        }
    }
    out
}

/// `Γ(x', x) = ∫ Ψ(x', x2, x3) Ψ(x, x2, x3) dμ²` through the general
/// `affine_det` routine.
fn oracle_gamma(phi: &WaveFunction, space: &afferm_core::slater::MeasuredSpace) -> Result<Vec<f64>, CliError> {
    let k = phi.nodes();
    let w = space.weights();
    let point = |n: usize| VectorD::from_real(phi.value(n)).expect("two components");
    let det = |a: usize, b: usize, cc: usize| -> Result<f64, CliError> {
        Ok(affine_det(&PointConfig::new(vec![point(a), point(b), point(cc)])?)?.re)
    };
    let mut out = vec![0.0; k * k];
    for xp in 0..k {
        for x in 0..k {
            let mut acc = 0.0;
            for y in 0..k {
                for z in 0..k {
                    acc += w[y] * w[z] * det(xp, y, z)? * det(x, y, z)?;
                }
            }
            out[xp * k + x] = acc;
        }
    }
    Ok(out)
}

fn spin_suite(report: &mut Report, tol: &Tolerances) -> Result<(), CliError> {
    let p = exchange_operator();
    let mut swap = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let ket = DMatrix::from_vec(4, 1, basis_state(2, 2 * i + j));
            let want = DMatrix::from_vec(4, 1, basis_state(2, 2 * j + i));
            swap = swap.max((&p * ket - want).norm());
        }
    }
    report.check("spin.exchange_swaps", swap, tol.get("exact"), "P|ij> = |ji>");
    let square = (&p * &p - DMatrix::identity(4, 4)).norm();
    report.check("spin.exchange_involution", square, tol.get("exact"), "P^2 = Id");

    let mut up: [ComplexScalar; 8] = [r(0.0); 8];
    up[0] = r(1.0);
    let quartet = s_squared_expectation(&up)?;
    report.check("spin.s2_quartet", (quartet - 15.0).abs(), tol.get("spin"), "<000|S^2|000> = 15");
    let mut doublet: [ComplexScalar; 8] = [r(0.0); 8];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    doublet[0b010] = r(h);
    doublet[0b100] = r(-h);
    let value = s_squared_expectation(&doublet)?;
    report.check("spin.s2_doublet", (value - 3.0).abs(), tol.get("spin"), "S^2 = 3 on (|010> - |100>)/sqrt 2");
    Ok(())
}
