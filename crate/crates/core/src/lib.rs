//! Exact machinery for correlation inequalities on posets.
//!
//! The crate covers finite posets and their ideals ([`poset`]), integer
//! polynomials ([`poly`]), enumeration of linear extensions and P-partitions
//! ([`enumeration`]), the generating functions built from them ([`genfun`]),
//! partitions and skew shapes ([`young`]), explicit distributive lattices with
//! four-functions checkers ([`lattice`]), and one verifier per inequality
//! family ([`inequalities`]). Every verifier computes both sides from
//! definitions, cross-checks them against a brute-force recomputation
//! ([`oracle`]), and reports a verdict with a witness on failure.

pub mod enumeration;
pub mod genfun;
pub mod inequalities;
pub mod instances;
pub mod lattice;
pub mod oracle;
pub mod poly;
pub mod poset;
pub mod young;

pub use enumeration::{MajConvention, PPartition, SliceConstraint};
pub use poly::{MultiPoly, Vars};
pub use poset::{ElemSet, IdealKind, Poset};
pub use young::{Partition, SkewShape};
