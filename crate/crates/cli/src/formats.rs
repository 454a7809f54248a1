//! JSON inputs and kernel exports.

use std::fmt::Write as _;
use std::path::Path;

use afferm_core::affine_forms::LagrangianTriple;
use afferm_core::collapse::{Morphism2, Spinor, Triple};
use afferm_core::slater::{Kernel1, Kernel2, MeasuredSpace, WaveFunction};
use afferm_core::tensor_core::{c, ComplexScalar};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_owned(), source })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

/// `{ "weights": [...], "phi": [[φ_1(x_k), φ_2(x_k)], ...] }`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlaterInput {
    pub weights: Vec<f64>,
    pub phi: Vec<Vec<f64>>,
}

impl SlaterInput {
    pub fn build(&self, weight_tol: f64) -> Result<(MeasuredSpace, WaveFunction), CliError> {
        if self.phi.len() != self.weights.len() {
            return Err(CliError::Input(format!(
                "{} weights but {} wave-function rows",
                self.weights.len(),
                self.phi.len()
            )));
        }
        let space = MeasuredSpace::with_tolerance(self.weights.clone(), weight_tol)?;
        let phi = WaveFunction::from_rows(&self.phi)?;
        Ok((space, phi))
    }
}

/// `{ "n": int, "L1": [[row], ...], "L2": ..., "L3": ... }`, `2n` rows of `n`
/// entries each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LagrangianInput {
    pub n: usize,
    #[serde(rename = "L1")]
    pub l1: Vec<Vec<f64>>,
    #[serde(rename = "L2")]
    pub l2: Vec<Vec<f64>>,
    #[serde(rename = "L3")]
    pub l3: Vec<Vec<f64>>,
}

impl LagrangianInput {
    pub fn build(&self) -> Result<LagrangianTriple, CliError> {
        Ok(LagrangianTriple::from_rows(self.n, [&self.l1, &self.l2, &self.l3])?)
    }
}

/// A JSON number or a `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Scalar> for ComplexScalar {
    fn from(s: Scalar) -> Self {
        match s {
            Scalar::Real(x) => c(x, 0.0),
            Scalar::Complex([re, im]) => c(re, im),
        }
    }
}

/// `{ "a": [x, y], "b": [x, y], "c": [x, y], "sigma": [[..], [..]] }`; the
/// morphism is optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleInput {
    pub a: [Scalar; 2],
    pub b: [Scalar; 2],
    pub c: [Scalar; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<[[Scalar; 2]; 2]>,
}

impl TripleInput {
    pub fn triple(&self) -> Triple {
        let lift = |p: &[Scalar; 2]| -> Spinor { [p[0].into(), p[1].into()] };
        Triple::new(lift(&self.a), lift(&self.b), lift(&self.c))
    }

    pub fn morphism(&self) -> Option<Morphism2> {
        self.sigma.map(|m| Morphism2([[m[0][0].into(), m[0][1].into()], [m[1][0].into(), m[1][1].into()]]))
    }
}

pub fn complex_json(z: ComplexScalar) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

fn dense_csv(rows: usize, cols: usize, values: &[f64]) -> String {
    let mut out = String::new();
    for r in 0..rows {
        for (j, v) in values[r * cols..(r + 1) * cols].iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write!(out, "{v}").expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

fn sparse_json(nodes: usize, rows: usize, cols: usize, values: &[f64], threshold: f64) -> serde_json::Value {
    let entries: Vec<serde_json::Value> = values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.abs() > threshold)
        .map(|(idx, v)| serde_json::json!([idx / cols, idx % cols, v]))
        .collect();
    serde_json::json!({
        "nodes": nodes,
        "shape": [rows, cols],
        "threshold": threshold,
        "entries": entries,
    })
}

pub fn kernel1_csv(k: &Kernel1) -> String {
    dense_csv(k.nodes(), k.nodes(), k.values())
}

/// Rows are `(x'_1, x'_2)` flattened as `x'_1 · K + x'_2`, columns likewise.
pub fn kernel2_csv(k: &Kernel2) -> String {
    dense_csv(k.size(), k.size(), k.values())
}

pub fn kernel1_json(k: &Kernel1, threshold: f64) -> serde_json::Value {
    sparse_json(k.nodes(), k.nodes(), k.nodes(), k.values(), threshold)
}

pub fn kernel2_json(k: &Kernel2, threshold: f64) -> serde_json::Value {
    sparse_json(k.nodes(), k.size(), k.size(), k.values(), threshold)
}
