//! Exact local invariants of reduced plane curve singularities.
//!
//! The crate computes Milnor and Tjurina numbers through standard bases in
//! the local ring, branch data through rational Newton–Puiseux expansions,
//! the delta invariant, the codimension of pulled-back 1-forms on a branch,
//! and assembles them into an [`invariants::InvariantRecord`] together with a
//! suite of identity and inequality checks.

pub mod cli;
pub mod error;
pub mod exactnum;
pub mod explorer;
pub mod finitealg;
pub mod invariants;
pub mod linalg;
pub mod localstd;
pub mod omega;
pub mod polyring;
pub mod puiseux;

pub use error::{Error, Result};
