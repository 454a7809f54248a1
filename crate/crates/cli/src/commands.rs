//! The non-`verify` subcommands.

use std::path::Path;

use afferm_core::affine_forms::{
    affine_det, conjecture_nullspace, kashiwara_index, kashiwara_q, symplectic_matrix, LagrangianTriple, PointConfig,
    LAGRANGIAN_TOL,
};
use afferm_core::collapse::{collapse, collapse_with_morphism, lambda, quotient, theta, tr1, ThetaBlocks};
use afferm_core::slater::{
    center, gamma1, gamma1_orbital_sum, gram, gram_det, one_point, sampled_moments, two_point, Gamma2, MeasuredSpace,
    WaveFunction, MAX_DENSE_NODES,
};
use afferm_core::tensor_core::{ComplexScalar, Permutation, VectorD};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::formats::{self, complex_json, LagrangianInput, SlaterInput, TripleInput};
use crate::report::{Report, Tolerances};
use crate::sample;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// A report plus named files to place in the `--out` directory.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub files: Vec<(String, String)>,
}

impl Outcome {
    fn report_only(report: Report) -> Self {
        Self { report, files: Vec::new() }
    }
}

pub const SLATER_TOLERANCES: &[(&str, f64)] = &[
    ("weight_sum", 1e-10),
    ("one_point", 1e-10),
    ("two_point", 1e-9),
    ("orthonormal", 1e-9),
    ("gamma1", 1e-9),
    ("gamma2", 1e-9),
    ("symmetry", 1e-12),
    ("psd", 1e-9),
    ("export_threshold", 1e-14),
];

/// Triples drawn for `sampled_moments` when the node set is too large to
/// materialize `γ^(2)`.
pub const SAMPLED_TRIPLES: usize = 100_000;

fn rel(got: f64, want: f64, floor: f64) -> f64 {
    (got - want).abs() / want.abs().max(floor)
}

fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Size of zero-tolerance denominators; 0 when every entry vanishes.
fn relative_to(value: f64, size: f64) -> f64 {
    if size == 0.0 {
        value
    } else {
        value / size
    }
}

pub fn slater(input: &Path, overrides: &[(String, f64)], format: Format, seed: u64) -> Result<Outcome, CliError> {
    let mut tol = Tolerances::new(SLATER_TOLERANCES);
    tol.apply(overrides)?;
    let parsed: SlaterInput = formats::read_json(input)?;
    let (space, phi) = parsed.build(tol.get("weight_sum"))?;
    if phi.components() != 2 {
        return Err(CliError::Input(format!("expected 2 wave-function components, found {}", phi.components())));
    }
    slater_report(&space, &phi, &tol, format, seed)
}

pub fn slater_report(
    space: &MeasuredSpace,
    phi: &WaveFunction,
    tol: &Tolerances,
    format: Format,
    seed: u64,
) -> Result<Outcome, CliError> {
    let mut report = Report::new("slater", None);
    let k = space.len();
    let scale = (0..k).flat_map(|n| phi.value(n).to_vec()).fold(1.0f64, |m, v| m.max(v.abs()));

    let one = one_point(phi, space)?;
    let two = two_point(phi, space)?;
    let g = gram(phi, space)?;
    let gd = gram_det(phi, space)?;
    let centered = center(phi, space)?;
    let mean = centered.mean().to_vec();

    report.check("slater.one_point", one.abs() / scale.powi(3), tol.get("one_point"), "<Psi> = 0");
    report.check(
        "slater.two_point_gram",
        rel(two, 6.0 * gd, 1e-6 * scale.powi(4)),
        tol.get("two_point"),
        "<Psi^2> = 6 det(Gram)",
    );

    let orthonormal_residual =
        max_abs(&mean).max((g[(0, 0)] - 1.0).abs()).max((g[(1, 1)] - 1.0).abs()).max(g[(0, 1)].abs());
    let orthonormal = orthonormal_residual <= tol.get("orthonormal");

    let g1 = gamma1(phi, space)?;
    report.check(
        "slater.gamma1_symmetry",
        relative_to(g1.max_asymmetry(), max_abs(g1.values())),
        tol.get("symmetry"),
        "gamma1 is symmetric",
    );
    if orthonormal {
        report.check("slater.two_point_normalized", (two / 6.0 - 1.0).abs(), tol.get("two_point"), "<Psi^2>/6 = 1");
        let orbital = gamma1_orbital_sum(phi, space)?;
        let err = g1.values().iter().zip(orbital.values()).fold(0.0f64, |m, (a, b)| m.max(rel(*a, *b, 1.0)));
        report.check("slater.gamma1_orbital_sum", err, tol.get("gamma1"), "gamma1(x',x) = sum_j phi_j(x') phi_j(x)");
    }

    let threshold = tol.get("export_threshold");
    let mut files = Vec::new();
    let ext = format.extension();
    files.push((
        format!("gamma1.{ext}"),
        match format {
            Format::Csv => formats::kernel1_csv(&g1),
            Format::Json => pretty(&formats::kernel1_json(&g1, threshold)),
        },
    ));

    let mut data = json!({
        "nodes": k,
        "mean": mean,
        "gram": [[g[(0, 0)], g[(0, 1)]], [g[(1, 0)], g[(1, 1)]]],
        "gram_det": gd,
        "one_point": one,
        "two_point": two,
        "two_point_over_six": two / 6.0,
        "orthonormal": orthonormal,
        "orthonormal_residual": orthonormal_residual,
    });

    if k <= MAX_DENSE_NODES {
        let g2 = Gamma2::new(phi, space)?;
        let kernel = g2.materialize()?;
        let size = max_abs(kernel.values());
        report.check(
            "slater.gamma2_symmetry",
            relative_to(kernel.max_asymmetry(), size),
            tol.get("symmetry"),
            "gamma2 is a symmetric matrix",
        );
        report.check(
            "slater.gamma2_pair_antisymmetry",
            relative_to(kernel.max_pair_symmetry(), size),
            tol.get("symmetry"),
            "gamma2 is antisymmetric within each pair",
        );
        let min_eig = kernel.eigenvalues().first().copied().unwrap_or(0.0);
        report.check("slater.gamma2_psd", (-min_eig).max(0.0), tol.get("psd"), "gamma2 is positive semidefinite");
        data["gamma2_min_eigenvalue"] = json!(min_eig);
        if orthonormal {
            let mut err = 0.0f64;
            for p1 in 0..k {
                for p2 in 0..k {
                    for x1 in 0..k {
                        for x2 in 0..k {
                            err = err.max(rel(g2.entry(p1, p2, x1, x2), g2.reduced_expansion(p1, p2, x1, x2), 1.0));
                        }
                    }
                }
            }
            report.check("slater.gamma2_expansion", err, tol.get("gamma2"), "gamma2 = sum_j D_j D'_j + det det'");
        }
        files.push((
            format!("gamma2.{ext}"),
            match format {
                Format::Csv => formats::kernel2_csv(&kernel),
                Format::Json => pretty(&formats::kernel2_json(&kernel, threshold)),
            },
        ));
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (m1, m2) = sampled_moments(phi, space, SAMPLED_TRIPLES, &mut rng)?;
        data["gamma2"] = json!(format!("not materialized for more than {MAX_DENSE_NODES} nodes"));
        data["sampled"] = json!({ "seed": seed, "triples": SAMPLED_TRIPLES, "one_point": m1, "two_point": m2 });
    }
    data["files"] = json!(files.iter().map(|(name, _)| name.clone()).collect::<Vec<_>>());
    report.data = Some(data);
    Ok(Outcome { report, files })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub const CONJECTURE_TOLERANCES: &[(&str, f64)] = &[("nullspace", 1e-8)];

pub fn conjecture(d: usize, m: usize, degree: usize, overrides: &[(String, f64)]) -> Result<Outcome, CliError> {
    let mut tol = Tolerances::new(CONJECTURE_TOLERANCES);
    tol.apply(overrides)?;
    let rep = conjecture_nullspace(d, m, degree)?;
    let mut report = Report::new("conjecture", None);

    let mut orth = 0.0f64;
    let mut antisym = 0.0f64;
    for (i, f) in rep.basis.iter().enumerate() {
        for (j, h) in rep.basis.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            orth = orth.max((f.dot(h) - want).abs());
        }
        for k in 0..m.saturating_sub(1) {
            let swapped = f.permute_args(&Permutation::transposition(m, k, k + 1))?;
            antisym = antisym.max(swapped.add(f)?.norm());
        }
    }
    report.check("nullspace.basis_orthonormal", orth, tol.get("nullspace"), "returned basis is orthonormal");
    report.check("nullspace.basis_antisymmetric", antisym, tol.get("nullspace"), "basis forms change sign under swaps");

    let basis: Vec<Value> = rep
        .basis
        .iter()
        .map(|f| {
            let terms: Vec<Value> = f
                .coefficients()
                .iter()
                .enumerate()
                .filter(|(_, v)| v.abs() > 1e-12)
                .map(|(flat, v)| json!({ "choices": f.choices(flat), "coefficient": v }))
                .collect();
            Value::Array(terms)
        })
        .collect();
    let tolerance = tol.get("nullspace");
    report.data = Some(json!({
        "d": d,
        "m": m,
        "degree": degree,
        "dimension": rep.dimension,
        "singular_values": rep.singular_values,
        "choice_encoding": "0 = constant, i + 1 = coordinate i",
        "basis": basis,
        "affine_det_residual": rep.affine_det_residual,
        "affine_det_in_span": rep.contains_affine_det(tolerance),
    }));
    Ok(Outcome::report_only(report))
}

pub const KASHIWARA_CONVENTION: &str =
    "omega(x, y) = x^T J y with J = [[0, I], [-I, 0]]; Q(x1, x2, x3) = omega(x1, x2) + omega(x2, x3) + omega(x3, x1)";

pub fn kashiwara(input: &Path, overrides: &[(String, f64)]) -> Result<Outcome, CliError> {
    let mut tol = Tolerances::new(&[("lagrangian", LAGRANGIAN_TOL)]);
    tol.apply(overrides)?;
    let parsed: LagrangianInput = formats::read_json(input)?;
    let triple = parsed.build()?;
    Ok(Outcome::report_only(kashiwara_report(&triple, &tol)))
}

fn kashiwara_report(triple: &LagrangianTriple, tol: &Tolerances) -> Report {
    let mut report = Report::new("kashiwara", None);
    let n = triple.half_dim();
    let j = symplectic_matrix(n);
    let mut residual = 0.0f64;
    for b in triple.bases() {
        let scale = b.norm().powi(2).max(1.0);
        residual = residual.max((b.transpose() * &j * b).amax() / scale);
    }
    report.check("kashiwara.lagrangian", residual, tol.get("lagrangian"), "each subspace is isotropic");
    let q = kashiwara_q(triple);
    let sig = kashiwara_index(triple);
    let q_rows: Vec<Vec<f64>> = q.row_iter().map(|row| row.iter().copied().collect()).collect();
    report.data = Some(json!({
        "n": n,
        "convention": KASHIWARA_CONVENTION,
        "q": q_rows,
        "eigenvalues": sig.eigenvalues,
        "n_plus": sig.n_plus,
        "n_minus": sig.n_minus,
        "n_zero": sig.n_zero,
        "signature": sig.signature(),
    }));
    report
}

pub const COLLAPSE_TOLERANCES: &[(&str, f64)] = &[("collapse", 1e-10), ("theta", 1e-12), ("morphism", 1e-9)];

pub fn collapse_demo(input: Option<&Path>, seed: u64, overrides: &[(String, f64)]) -> Result<Outcome, CliError> {
    let mut tol = Tolerances::new(COLLAPSE_TOLERANCES);
    tol.apply(overrides)?;
    let (triple, sigma, seed_used) = match input {
        Some(path) => {
            let parsed: TripleInput = formats::read_json(path)?;
            (parsed.triple(), parsed.morphism(), None)
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (sample::triple(&mut rng), Some(sample::morphism(&mut rng)), Some(seed))
        }
    };
    let mut report = Report::new("collapse-demo", seed_used);

    let lam = lambda(&triple);
    let tb = theta(&lam);
    let z = tr1(&tb)?;
    let value = quotient(&z);
    let pts = triple.particles().iter().map(|p| VectorD::new(p.to_vec())).collect::<Result<Vec<_>, _>>()?;
    let want = affine_det(&PointConfig::new(pts)?)?;
    let floor = 1e-6 * triple.norm().powi(2);

    let closed = ThetaBlocks::closed_form(&triple);
    let mut theta_err = 0.0f64;
    for k in 0..3 {
        for s in 0..6 {
            theta_err = theta_err.max((tb.x_blocks[k][s] - closed.x_blocks[k][s]).norm());
            theta_err = theta_err.max((tb.y_blocks[k][s] - closed.y_blocks[k][s]).norm());
        }
    }
    report.check("collapse.theta_closed_form", theta_err, tol.get("theta"), "theta blocks match the closed form");
    report.check(
        "collapse.pipeline",
        (value - want).norm() / want.norm().max(floor),
        tol.get("collapse"),
        "z1 + z2 + z3 = det(b-a, c-a)",
    );

    let lambda_rows: Vec<Vec<Value>> = (0..6).map(|i| (0..6).map(|j| complex_json(lam.get(i, j))).collect()).collect();
    let blocks = |b: &[[ComplexScalar; 6]; 3]| -> Vec<Vec<Value>> {
        b.iter().map(|row| row.iter().map(|z| complex_json(*z)).collect()).collect()
    };
    let spinor = |p: &[ComplexScalar; 2]| json!([complex_json(p[0]), complex_json(p[1])]);
    let mut data = json!({
        "a": spinor(&triple.a),
        "b": spinor(&triple.b),
        "c": spinor(&triple.c),
        "lambda": lambda_rows,
        "theta_x": blocks(&tb.x_blocks),
        "theta_y": blocks(&tb.y_blocks),
        "tr1": z.iter().map(|v| complex_json(*v)).collect::<Vec<_>>(),
        "collapse": complex_json(collapse(&triple)?),
        "affine_det": complex_json(want),
    });

    if let Some(sigma) = sigma {
        let mapped = collapse_with_morphism(&triple, &sigma)?;
        let expected = sigma.det() * value;
        let floor = floor * sigma.det().norm().max(1e-3);
        report.check(
            "collapse.morphism_covariance",
            (mapped - expected).norm() / expected.norm().max(floor),
            tol.get("morphism"),
            "collapse(sigma t) = det(sigma) collapse(t)",
        );
        data["sigma"] = json!(sigma
            .0
            .iter()
            .map(|row| row.iter().map(|z| complex_json(*z)).collect::<Vec<_>>())
            .collect::<Vec<_>>());
        data["det_sigma"] = complex_json(sigma.det());
        data["collapse_mapped"] = complex_json(mapped);
    }
    report.data = Some(data);
    Ok(Outcome::report_only(report))
}
