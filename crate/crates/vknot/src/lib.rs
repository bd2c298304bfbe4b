//! Exact invariants of virtual knots presented by Gauss codes.
//!
//! The crate computes, over arbitrary-precision integers:
//!
//! - the generalized Alexander polynomial `Δ0` of a Gauss diagram, via a
//!   sparse determinant of the crossing matrix ([`alexander`]);
//! - an independent reconstruction of `Δ0` from alternating configurations
//!   and smoothings, plus a brute-force determinant, used as cross-checking
//!   oracles ([`configurations`]);
//! - the writhe polynomial `W` and the second-order writhe polynomial `V`,
//!   together with the bridge identities tying them to `Δ0`
//!   ([`writhe`]);
//! - Reidemeister and forbidden moves on diagrams ([`moves`]);
//! - lower bounds for the virtual crossing number and the forbidden number
//!   derived from the shapes of `W` and `V` ([`bounds`]).
//!
//! Polynomial arithmetic is exact throughout ([`laurent`]); nothing here is
//! numeric or approximate.  The [`verify`] module bundles per-diagram
//! consistency checks and seeded random test sweeps over all of the above.

pub mod alexander;
pub mod bounds;
pub mod configurations;
pub mod gauss;
pub mod laurent;
pub mod moves;
pub mod verify;
pub mod writhe;

pub use gauss::GaussDiagram;
pub use laurent::{BiLaurent, UniLaurent};

// Coefficient types appearing in the public API, re-exported so downstream
// crates use the exact same versions.
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
