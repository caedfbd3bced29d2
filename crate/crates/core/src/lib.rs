//! Construction and verification of MDS self-dual codes over odd
//! characteristic finite fields.
//!
//! Evaluation sets are unions of cyclotomic classes of `F_q^*`. Whether a
//! generalized Reed-Solomon (GRS) or extended GRS code on such a set can be
//! scaled to a self-dual code depends only on the square classes of the
//! products `Δ_S(a)`, and those parities reduce to sums of cyclotomic
//! numbers. This crate computes the cyclotomic numbers, evaluates the parity
//! criteria, emits construction recipes, and materializes each recipe as a
//! concrete code with a machine-checked certificate.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line tool live in the `cyclomds-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;

pub mod arith;
pub mod cyclotomy;
pub mod field;
pub mod grs;
pub mod matrix;
pub mod oracle;
pub mod theorem;

pub use error::{Error, Result};
pub use field::{Elem, Field, FieldSpec};
