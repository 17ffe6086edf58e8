//! Exact invariant theory of finite abelian p-groups: Ulm invariants,
//! indicators, fundamental matrices, lattices of fully invariant subgroups,
//! endomorphism rings with their ideals and the dagger correspondence, plus a
//! symbolic layer for transfinite Ulm data.
//!
//! Everything is computed by exhaustive enumeration on small groups, and the
//! [`claims`] module turns these computations into verdicts on a catalogue of
//! structural statements.

pub mod analyze;
mod budget;
pub mod claims;
pub mod cyclic;
pub mod endo;
mod error;
pub mod group;
pub mod indicator;
pub mod lattice;
pub mod matrix;
pub mod report;
pub mod ulm;

pub use budget::Budget;
pub use error::{Error, Result};
pub use group::{Element, GroupSpec, GroupTable, Height, Subgroup};
pub use indicator::Indicator;
