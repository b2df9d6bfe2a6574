//! Finite lattices and their subuniverses.
//!
//! A [`Lattice`] is stored as up-set/down-set bit rows plus precomputed join
//! and meet tables, with elements indexed along a linear extension (bottom is
//! `0`, top is `n - 1`). On top of that the crate provides:
//!
//! * [`subuniverse`]: exact counting and enumeration of join/meet-closed subsets,
//! * [`structure`]: irreducibles, isolated elements and edges, glued-sum
//!   decomposition and classification of the lattices with the most subuniverses,
//! * [`census`]: canonical forms and isomorph-free generation of all lattices of
//!   a given size, with spectrum reports and exhaustive verifiers,
//! * [`congruence`]: principal congruences and congruence counting.

pub mod bitset;
pub mod census;
pub mod congruence;
mod error;
pub mod expr;
pub mod lattice;
pub mod structure;
pub mod subuniverse;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use expr::LatticeExpr;
pub use lattice::{Lattice, MAX_ELEMENTS};
