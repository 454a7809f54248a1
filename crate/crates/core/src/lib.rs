//! Affine determinants and fermionic collapse maps.
//!
//! * [`tensor_core`]: dense complex tensors, permutations, antisymmetrization.
//! * [`collapse`]: three distinguishable spin-½ particles collapsed onto
//!   `det(b − a, c − a)`, plus partial traces of the resulting state.
//! * [`affine_forms`]: affine determinants in `C^d`, non-degeneracy probing,
//!   antisymmetric multi-affine forms and the Kashiwara index.
//! * [`slater`]: affine Slater determinants on a finite probability space,
//!   their n-point functions, reduced density matrices and spin operators.
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]

extern crate alloc;

pub mod affine_forms;
pub mod collapse;
pub mod error;
pub mod slater;
pub mod summation;
pub mod tensor_core;

pub use error::{Error, Result};
