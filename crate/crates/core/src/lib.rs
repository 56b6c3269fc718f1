//! Exact arithmetic over finite fields and enumeration of Euclidean
//! self-dual cyclic, quasi-cyclic and skew-cyclic (θ-cyclic) codes.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is exact: field
//! elements are residues, counts are integers, and every closed-form count
//! has a brute-force counterpart in [`oracle`] to check it against.
//!
//! Module map:
//!
//! - [`field`]: `GF(p^m)` with a verified irreducible modulus, Frobenius
//!   automorphisms, and the [`field::FieldOps`] abstraction shared by
//!   everything generic over a field.
//! - [`extension`]: towers `GF(q)[z]/(f)` used for roots of unity and for the
//!   CRT constituent fields.
//! - [`poly`]: dense univariate polynomials, reciprocals, minimal polynomials
//!   and the coset-driven factorization of `x^n - 1`.
//! - [`cosets`]: cyclotomic cosets and the integer functions behind the
//!   self-dual cyclic count.
//! - [`cyclic_enum`]: the generator-selection set and the θ-cyclic count.
//! - [`code`]: linear codes in canonical form, shifts, duality, weight
//!   enumerators.
//! - [`skew`] and [`oracle`]: skew polynomials and exhaustive enumerators.
//! - [`quasicyclic`]: CRT decomposition of quasi-cyclic codes and the
//!   index-`d` count formulas.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod code;
pub mod cosets;
pub mod cyclic_enum;
mod error;
pub mod extension;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod quasicyclic;
pub mod skew;

pub use error::{Error, Result};
pub use field::{Automorphism, Elem, Field, FieldElement, FieldOps, FieldSpec};
