use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("expected {expected} arguments, found {found}")]
    ArgumentCount { expected: usize, found: usize },

    #[error("vector dimension must be positive")]
    EmptyVector,

    #[error("tensor degree {degree} exceeds the supported maximum {max}")]
    UnsupportedDegree { degree: usize, max: usize },

    #[error("arity {arity} exceeds the supported maximum {max}")]
    ArityOverflow { arity: usize, max: usize },

    #[error("problem size {size} exceeds the limit {limit}")]
    SizeOverflow { size: usize, limit: usize },

    #[error("internal consistency check `{check}` failed with residual {residual:e}")]
    Consistency { check: &'static str, residual: f64 },

    #[error("subspace L{subspace} is not Lagrangian: omega(col {i}, col {j}) = {residual:e}")]
    NotLagrangian { subspace: usize, i: usize, j: usize, residual: f64 },

    #[error("subspace L{subspace} has rank {rank}, expected {expected}")]
    RankDeficient { subspace: usize, rank: usize, expected: usize },

    #[error("measure must have at least two nodes, found {0}")]
    TooFewNodes(usize),

    #[error("weight {index} is not a positive finite number: {value}")]
    InvalidWeight { index: usize, value: f64 },

    #[error("weights sum to {sum}, expected 1 within {tol:e}")]
    WeightsNotNormalized { sum: f64, tol: f64 },

    #[error("wave function value at node {node}, component {component} is not finite")]
    NonFiniteValue { node: usize, component: usize },

    #[error("unknown node label {label} (space has {nodes} nodes)")]
    UnknownNode { label: usize, nodes: usize },

    #[error("operation requires {expected} components, wave function has {found}")]
    ComponentCount { expected: usize, found: usize },

    #[error("table is not symmetric at ({i}, {j}, {k}): deviation {deviation:e}")]
    AsymmetricTable { i: usize, j: usize, k: usize, deviation: f64 },

    #[error("state norm is {norm}, expected 1 within {tol:e}")]
    Unnormalized { norm: f64, tol: f64 },

    #[error("dense kernel for {nodes} nodes exceeds the materialization limit {max}")]
    KernelTooLarge { nodes: usize, max: usize },
}
