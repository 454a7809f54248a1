//! Collapse of three distinguishable spin-½ fermions into an affine
//! determinant.
//!
//! The distinguishable particles `a, b, c ∈ C^2` are embedded into disjoint
//! blocks of `C^6`, combined into `Λ = a'∧b' + b'∧c' + c'∧a'`, reindexed into
//! three `C^2 ⊗ C^6` blocks, partially traced down to `C^3` and finally
//! projected onto the one-dimensional quotient `C^3 / ⟨u, v⟩`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::tensor_core::{r, wedge2, ComplexScalar, DenseTensor, VectorD};

pub type Spinor = [ComplexScalar; 2];

/// `u = (0, 1, −1)`, the `tr1` direction of a triple with `a = b`.
pub const U: [f64; 3] = [0.0, 1.0, -1.0];
/// `v = (1, 0, −1)`.
pub const V: [f64; 3] = [1.0, 0.0, -1.0];
/// `w = (1, −1, 0) = v − u`.
pub const W: [f64; 3] = [1.0, -1.0, 0.0];

/// Relative tolerance of the `Tr_1(Y') = −Tr_1(X')` consistency check.
pub const Y_TRACE_TOL: f64 = 1e-12;

#[inline]
pub fn det2(p: &Spinor, q: &Spinor) -> ComplexScalar {
    p[0] * q[1] - p[1] * q[0]
}

/// Three distinguishable particles with coordinates `(x_A, y_A)`, ….
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triple {
    pub a: Spinor,
    pub b: Spinor,
    pub c: Spinor,
}

impl Triple {
    pub fn new(a: Spinor, b: Spinor, c: Spinor) -> Self {
        Self { a, b, c }
    }

    pub fn from_real(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Self {
        let lift = |p: [f64; 2]| [r(p[0]), r(p[1])];
        Self::new(lift(a), lift(b), lift(c))
    }

    pub fn particles(&self) -> [&Spinor; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// Applies `σ` to each particle.
    pub fn map(&self, sigma: &Morphism2) -> Self {
        Self::new(sigma.apply(&self.a), sigma.apply(&self.b), sigma.apply(&self.c))
    }

    pub fn norm(&self) -> f64 {
        let sq: f64 = self.particles().iter().flat_map(|p| p.iter()).map(|z| z.norm_sqr()).sum();
        num_traits::Float::sqrt(sq)
    }
}

/// The triple embedded block-wise into `C^6 = H_A ⊕ H_B ⊕ H_C`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedTriple {
    pub a: VectorD,
    pub b: VectorD,
    pub c: VectorD,
}

impl EmbeddedTriple {
    /// Reads the `C^2` block each particle occupies.
    pub fn project(&self) -> Triple {
        let block = |v: &VectorD, k: usize| [v[2 * k], v[2 * k + 1]];
        Triple::new(block(&self.a, 0), block(&self.b, 1), block(&self.c, 2))
    }
}

pub fn embed(t: &Triple) -> EmbeddedTriple {
    let place = |p: &Spinor, block: usize| {
        let mut entries = alloc::vec![ComplexScalar::default(); 6];
        entries[2 * block] = p[0];
        entries[2 * block + 1] = p[1];
        VectorD::new(entries).expect("dimension 6")
    };
    EmbeddedTriple { a: place(&t.a, 0), b: place(&t.b, 1), c: place(&t.c, 2) }
}

/// `Λ`, an antisymmetric degree-2 tensor over `C^6`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaTensor(DenseTensor);

impl LambdaTensor {
    pub fn tensor(&self) -> &DenseTensor {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> ComplexScalar {
        self.0.get(&[i, j])
    }
}

pub fn lambda(t: &Triple) -> LambdaTensor {
    let e = embed(t);
    let ab = wedge2(&e.a, &e.b).expect("dim 6");
    let bc = wedge2(&e.b, &e.c).expect("dim 6");
    let ca = wedge2(&e.c, &e.a).expect("dim 6");
    LambdaTensor(ab.add(&bc).and_then(|s| s.add(&ca)).expect("dim 6"))
}

/// The six column blocks `X'_1, X'_2, X'_3` and `Y'_1, Y'_2, Y'_3`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaBlocks {
    pub x_blocks: [[ComplexScalar; 6]; 3],
    pub y_blocks: [[ComplexScalar; 6]; 3],
}

impl ThetaBlocks {
    /// Builds the blocks directly from coordinates:
    /// `(a ⊗ (b, −c, 0), b ⊗ (−a, 0, c), c ⊗ (0, a, −b))`.
    pub fn closed_form(t: &Triple) -> Self {
        let z = [ComplexScalar::default(); 2];
        let neg = |p: &Spinor| [-p[0], -p[1]];
        let tails: [[Spinor; 3]; 3] = [[t.b, neg(&t.c), z], [neg(&t.a), z, t.c], [z, t.a, neg(&t.b)]];
        let mut x_blocks = [[ComplexScalar::default(); 6]; 3];
        let mut y_blocks = [[ComplexScalar::default(); 6]; 3];
        for (k, head) in t.particles().iter().enumerate() {
            for (sb, tail) in tails[k].iter().enumerate() {
                for s in 0..2 {
                    x_blocks[k][2 * sb + s] = head[0] * tail[s];
                    y_blocks[k][2 * sb + s] = head[1] * tail[s];
                }
            }
        }
        Self { x_blocks, y_blocks }
    }

    /// Checks the block-support pattern: `X'_1` vanishes on slots 4–5,
    /// `X'_2` on 2–3, `X'_3` on 0–1, and likewise for `Y'`.
    pub fn has_block_support(&self) -> bool {
        let zero = ComplexScalar::default();
        (0..3).all(|k| {
            let hole = 2 - k;
            [&self.x_blocks[k], &self.y_blocks[k]].iter().all(|b| b[2 * hole] == zero && b[2 * hole + 1] == zero)
        })
    }
}

/// Where `θ` sends a single coordinate of `Λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaSlot {
    /// Column block `0..3`.
    pub block: usize,
    /// `0` for the `X'` row, `1` for the `Y'` row.
    pub row: usize,
    /// Slot within `C^6`.
    pub slot: usize,
}

/// Index map `(i, j) ∈ 6 × 6 ↦ ThetaSlot`.
///
/// Row `i = 2k + row` of `Λ` belongs to particle `k`; the column blocks of
/// that row are rotated so that the particle's own (vanishing) block lands in
/// slot-block `2 − k`.
pub fn theta_table() -> [[ThetaSlot; 6]; 6] {
    let mut table = [[ThetaSlot { block: 0, row: 0, slot: 0 }; 6]; 6];
    for (i, row) in table.iter_mut().enumerate() {
        let (block, r) = (i / 2, i % 2);
        for (j, entry) in row.iter_mut().enumerate() {
            let (col_block, s) = (j / 2, j % 2);
            // col_block = (slot_block + 4 - block) % 3
            let slot_block = (col_block + block + 2) % 3;
            *entry = ThetaSlot { block, row: r, slot: 2 * slot_block + s };
        }
    }
    table
}

/// The reindexation `θ`. The `½` of each wedge is absorbed so that the
/// blocks are exactly [`ThetaBlocks::closed_form`].
pub fn theta(lambda: &LambdaTensor) -> ThetaBlocks {
    let mut out =
        ThetaBlocks { x_blocks: [[ComplexScalar::default(); 6]; 3], y_blocks: [[ComplexScalar::default(); 6]; 3] };
    for (i, row) in theta_table().iter().enumerate() {
        for (j, to) in row.iter().enumerate() {
            let value = lambda.get(i, j) * 2.0;
            let target = if to.row == 0 { &mut out.x_blocks } else { &mut out.y_blocks };
            target[to.block][to.slot] = value;
        }
    }
    out
}

fn column_sum(blocks: &[[ComplexScalar; 6]; 3]) -> [ComplexScalar; 6] {
    let mut sum = [ComplexScalar::default(); 6];
    for b in blocks {
        for (s, v) in sum.iter_mut().zip(b) {
            *s += v;
        }
    }
    sum
}

/// Partial trace `Tr_1`: the non-trivial slots `(1, 3, 5)` of
/// `X'_1 + X'_2 + X'_3`.
///
/// Fails when the `Y'` column sum is not the negative of the `X'` one, or
/// when the trivial slots do not vanish.
pub fn tr1(tb: &ThetaBlocks) -> Result<[ComplexScalar; 3]> {
    let x = column_sum(&tb.x_blocks);
    let y = column_sum(&tb.y_blocks);
    let scale = tb.x_blocks.iter().chain(&tb.y_blocks).flat_map(|b| b.iter()).map(|z| z.norm()).fold(0.0, f64::max);
    let mut residual: f64 = 0.0;
    for k in 0..3 {
        residual = residual.max((y[2 * k] + x[2 * k + 1]).norm());
        residual = residual.max(x[2 * k].norm()).max(y[2 * k + 1].norm());
    }
    if residual > Y_TRACE_TOL * scale.max(f64::MIN_POSITIVE) && residual > 0.0 {
        return Err(Error::Consistency { check: "tr1 y-trace", residual });
    }
    Ok([x[1], x[3], x[5]])
}

/// The rank-1 quotient representative `z ↦ z_1 + z_2 + z_3`; it annihilates
/// `u` and `v`.
pub fn quotient(z: &[ComplexScalar; 3]) -> ComplexScalar {
    z[0] + z[1] + z[2]
}

/// `ω_1(a, b, c) = Tr_1 θ(Λ)`.
pub fn omega1(t: &Triple) -> Result<[ComplexScalar; 3]> {
    tr1(&theta(&lambda(t)))
}

/// Runs embed → Λ → θ → Tr_1 → quotient. Equals `det(b − a, c − a)`.
pub fn collapse(t: &Triple) -> Result<ComplexScalar> {
    omega1(t).map(|z| quotient(&z))
}

/// A linear map `σ: C^2 → C^2`, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Morphism2(pub [[ComplexScalar; 2]; 2]);

impl Morphism2 {
    pub fn identity() -> Self {
        Self([[r(1.0), r(0.0)], [r(0.0), r(1.0)]])
    }

    pub fn diag(p: ComplexScalar, q: ComplexScalar) -> Self {
        Self([[p, r(0.0)], [r(0.0), q]])
    }

    pub fn apply(&self, p: &Spinor) -> Spinor {
        let m = &self.0;
        [m[0][0] * p[0] + m[0][1] * p[1], m[1][0] * p[0] + m[1][1] * p[1]]
    }

    pub fn det(&self) -> ComplexScalar {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }
}

/// `(σ⊗σ)` applied in the block representation, then collapsed.
pub fn collapse_with_morphism(t: &Triple, sigma: &Morphism2) -> Result<ComplexScalar> {
    collapse(&t.map(sigma))
}

/// Computational basis `|0⟩, |1⟩` of `C^2`.
pub fn computational_basis() -> [Spinor; 2] {
    [[r(1.0), r(0.0)], [r(0.0), r(1.0)]]
}

fn diff(p: &Spinor, q: &Spinor) -> Spinor {
    [p[0] - q[0], p[1] - q[1]]
}

/// The state kernel `ρ(a,b,c; a',b',c') = det(b−a, c−a) · det(b'−a', c'−a')`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RhoKernel;

impl RhoKernel {
    pub fn amplitude(a: &Spinor, b: &Spinor, c: &Spinor) -> ComplexScalar {
        det2(&diff(b, a), &diff(c, a))
    }

    pub fn eval(ket: &Triple, bra: &Triple) -> ComplexScalar {
        Self::amplitude(&ket.a, &ket.b, &ket.c) * Self::amplitude(&bra.a, &bra.b, &bra.c)
    }
}

/// `Tr_A ρ(b, c; b', c') = Σ_a det(b−a, c−a) det(b'−a, c'−a)` over the
/// computational basis.
pub fn rho_trace_a(b: &Spinor, c: &Spinor, bp: &Spinor, cp: &Spinor) -> ComplexScalar {
    computational_basis().iter().map(|a| RhoKernel::amplitude(a, b, c) * RhoKernel::amplitude(a, bp, cp)).sum()
}

/// `Tr_{A,C} ρ(b; b') = Σ_{a,c} det(b−a, c−a) det(b'−a, c−a)`.
pub fn rho_trace_ac(b: &Spinor, bp: &Spinor) -> ComplexScalar {
    let basis = computational_basis();
    let mut sum = ComplexScalar::default();
    for a in &basis {
        for c in &basis {
            sum += RhoKernel::amplitude(a, b, c) * RhoKernel::amplitude(a, bp, c);
        }
    }
    sum
}

/// `Tr_A ρ` as a matrix over computational-basis arguments, rows `(b, c)` and
/// columns `(b', c')` in the order `00, 01, 10, 11`.
pub fn rho_trace_a_basis_matrix() -> Vec<ComplexScalar> {
    let basis = computational_basis();
    let pairs: Vec<(Spinor, Spinor)> = basis.iter().flat_map(|b| basis.iter().map(move |c| (*b, *c))).collect();
    let mut out = Vec::with_capacity(16);
    for (b, c) in &pairs {
        for (bp, cp) in &pairs {
            out.push(rho_trace_a(b, c, bp, cp));
        }
    }
    out
}
