//! Exact combinatorics of the highest weight Harish-Chandra modules of
//! `Sp(2n, R)` at infinitesimal character `ρ`.
//!
//! The parameters are the `w ∈ W(C_n)` with `-wρ` dominant for the compact
//! roots. Each one determines a conormal bundle whose moment image is the
//! closure of a `K`-orbit `O_k ⊂ sym(n)`; the crate computes `k` by generic
//! rank, groups parameters into cells, and produces the parameters (directly
//! and by induction from a Levi factor) whose leading term cycles are
//! reducible.

pub mod cells;
pub mod error;
pub mod field;
pub mod induction;
pub mod orbits;
pub mod rootsys;
pub mod symrep;
pub mod weyl;

pub use error::{Error, Result};
pub use symrep::Sampler;
pub use weyl::SignedPermutation;
