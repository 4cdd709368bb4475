//! Finite-field and group-theoretic machinery for realizing PSL/PSU as
//! Galois groups via cyclic covers of the projective line.
//!
//! Modules, bottom up: [`ffield`] (F_{p^k}), [`arith`] (verdicts and integer
//! lemmas), [`covering`] (cover invariants), [`matrix`], [`burau`] (monodromy),
//! [`formsolve`] (invariant forms), [`matgroup`] (group orders and classes).

pub mod arith;
pub mod burau;
pub mod covering;
pub mod ffield;
pub mod formsolve;
pub mod matgroup;
pub mod matrix;
mod poly;

pub use arith::{realization_verdict, theorem_main_verdict, Family, RealizationVerdict};
pub use burau::{cover_rep, quotient_rep, reduced_burau, BurauRep};
pub use ffield::{FFElement, FieldTower};
pub use formsolve::{invariant_form, SesquiForm};
pub use matgroup::{verify_image, GroupReport};
pub use matrix::MatrixFq;

/// Serialize big integers as decimal strings; JSON numbers lose precision.
pub(crate) fn decimal<S: serde::Serializer>(n: &num_bigint::BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_str_radix(10))
}
