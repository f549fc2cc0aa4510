//! Capacity of binary codes whose pairwise differences avoid forbidden
//! patterns over `{-, 0, +}`.
//!
//! The crate is organized as a pipeline:
//!
//! - [`patterns`]: words, pattern sets, and their zero-run parameters.
//! - [`brute`]: exhaustive maximum-code and admissible-word oracles.
//! - [`transfer`]: the binary transfer-matrix family `Σ(D)` whose product
//!   norms count maximum codes.
//! - [`bounds`]: capacity brackets computed from `δ_n(D)`.
//! - [`positivity`]: the polynomial positivity test on an Aho-Corasick
//!   automaton and the NAE-3SAT reduction for extended alphabets.
//! - [`jsr`]: joint spectral radius brackets, the polytope iteration, and
//!   invariant-polytope certificates giving exact capacities.
//! - [`cli`]: the `diffcap` command-line front end.

pub mod bounds;
pub mod brute;
pub mod cli;
pub mod error;
pub mod jsr;
pub mod patterns;
pub mod positivity;
pub mod transfer;

pub use error::{Error, Result};
pub use patterns::{BinWord, DiffWord, Pattern, PatternSet, Symbol, ZeroParams};
