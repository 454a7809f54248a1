//! Pauli matrices, the two-qubit exchange operator and total spin.

use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::tensor_core::{c, r, ComplexScalar};

pub type SpinOperator = DMatrix<ComplexScalar>;

/// Allowed deviation of `‖state‖` from 1.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// `σ_x, σ_y, σ_z`.
pub fn pauli() -> [SpinOperator; 3] {
    let z = r(0.0);
    [
        DMatrix::from_row_slice(2, 2, &[z, r(1.0), r(1.0), z]),
        DMatrix::from_row_slice(2, 2, &[z, c(0.0, -1.0), c(0.0, 1.0), z]),
        DMatrix::from_row_slice(2, 2, &[r(1.0), z, z, r(-1.0)]),
    ]
}

/// `op` acting on qubit `qubit` of `n`; qubit 0 is the most significant bit.
pub fn on_qubit(n: usize, qubit: usize, op: &SpinOperator) -> SpinOperator {
    assert!(qubit < n, "qubit {qubit} out of range for {n} qubits");
    let mut out = DMatrix::from_element(1, 1, r(1.0));
    for k in 0..n {
        let factor = if k == qubit { op.clone() } else { DMatrix::identity(2, 2) };
        out = out.kronecker(&factor);
    }
    out
}

/// `σ_i · σ_j = Σ_α σ_α^(i) σ_α^(j)`; equals `3·Id` when `i = j`.
pub fn spin_dot(n: usize, i: usize, j: usize) -> SpinOperator {
    let dim = 1 << n;
    let mut out = DMatrix::zeros(dim, dim);
    for s in &pauli() {
        out += on_qubit(n, i, s) * on_qubit(n, j, s);
    }
    out
}

/// `P = ½(Id + σ_1·σ_2)` on two qubits, the swap `|ij⟩ ↦ |ji⟩`.
pub fn exchange_operator() -> SpinOperator {
    (DMatrix::identity(4, 4) + spin_dot(2, 0, 1)) * r(0.5)
}

/// `Σ_{i,j} σ_i·σ_j` over all ordered pairs of `n` qubits, diagonal included.
///
/// In these units a spin-`s` multiplet has eigenvalue `4 s (s + 1)`.
pub fn s_squared(n: usize) -> SpinOperator {
    let dim = 1 << n;
    let mut out = DMatrix::zeros(dim, dim);
    for i in 0..n {
        for j in 0..n {
            out += spin_dot(n, i, j);
        }
    }
    out
}

/// `⟨state| S² |state⟩` for three qubits.
pub fn s_squared_expectation(state: &[ComplexScalar; 8]) -> Result<f64> {
    let norm = Float::sqrt(state.iter().map(|z| z.norm_sqr()).sum::<f64>());
    if (norm - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::Unnormalized { norm, tol: NORMALIZATION_TOL });
    }
    let psi = DMatrix::from_column_slice(8, 1, state);
    let value = psi.adjoint() * s_squared(3) * &psi;
    Ok(value[(0, 0)].re)
}

/// Basis state `|bits⟩` of `n` qubits.
pub fn basis_state(n: usize, bits: usize) -> Vec<ComplexScalar> {
    let mut v = alloc::vec![r(0.0); 1 << n];
    v[bits] = r(1.0);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collapse::{computational_basis, RhoKernel};

    #[test]
    fn exchange_swaps_basis_states() {
        let p = exchange_operator();
        for i in 0..2 {
            for j in 0..2 {
                let ket = DMatrix::from_vec(4, 1, basis_state(2, 2 * i + j));
                let want = DMatrix::from_vec(4, 1, basis_state(2, 2 * j + i));
                assert_eq!(&p * ket, want);
            }
        }
        assert_eq!(&p * &p, DMatrix::identity(4, 4));
    }

    #[test]
    fn exchange_is_hermitian() {
        let p = exchange_operator();
        assert_eq!(p.adjoint(), p);
        let s2 = s_squared(3);
        assert_eq!(s2.adjoint(), s2);
    }

    #[test]
    fn all_up_is_quartet() {
        let mut state = [r(0.0); 8];
        state[0] = r(1.0);
        assert!((s_squared_expectation(&state).unwrap() - 15.0).abs() < 1e-12);
    }

    #[test]
    fn singlet_pair_plus_spectator_is_doublet() {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let mut state = [r(0.0); 8];
        state[0b010] = r(h);
        state[0b100] = r(-h);
        assert!((s_squared_expectation(&state).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn affine_amplitudes_on_basis_points_vanish() {
        let basis = computational_basis();
        let mut state = [r(0.0); 8];
        for (bits, amp) in state.iter_mut().enumerate() {
            let pick = |shift: usize| &basis[(bits >> shift) & 1];
            *amp = RhoKernel::amplitude(pick(2), pick(1), pick(0));
        }
        assert!(state.iter().all(|z| *z == r(0.0)));
        assert!(matches!(s_squared_expectation(&state), Err(Error::Unnormalized { .. })));
    }

    #[test]
    fn rejects_unnormalized() {
        let state = [r(1.0); 8];
        assert!(s_squared_expectation(&state).is_err());
    }
}
