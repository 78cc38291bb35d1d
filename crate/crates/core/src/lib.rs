//! Triple product property (TPP) tests and searches over small finite groups.
//!
//! The crate provides a self-contained finite-group kernel (permutation and
//! matrix groups, subgroup enumeration, complex irreducible character
//! degrees) plus the TPP machinery on top of it: verified triple tests,
//! brute-force searches for the best subset and subgroup triples, and the
//! support tooling (pruning statistics, subset unranking, benchmarks) to
//! reproduce the published tables for groups of small order.

pub mod chars;
pub mod error;
pub mod field;
pub mod group;
pub mod matrix;
pub mod perm;
pub mod bench;
pub mod search;
pub mod spec;
pub mod sets;
pub mod subgroups;
pub mod tpp;

pub use error::{Error, Result};
pub use field::GaloisField;
pub use group::FiniteGroup;
pub use matrix::Mat;
pub use perm::Perm;
pub use sets::ElementSet;
