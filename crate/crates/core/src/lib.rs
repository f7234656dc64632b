//! Exact character tables, p-blocks, defect groups and real fusion data of
//! finite permutation groups, together with executable checks of the real
//! versions of the k(B), Olsson and Eaton conjectures for 2-blocks.
//!
//! The crate is layered bottom-up:
//!
//! * [`permgroup`]: permutations, Schreier–Sims, classes, subgroups, quotients.
//! * [`cyclo`]: exact arithmetic in cyclotomic fields.
//! * [`ffield`]: prime fields and their small extensions.
//! * [`chartable`]: Dixon–Schneider character tables.
//! * [`blocktheory`]: blocks, defect groups and the Brauer correspondence.
//! * [`realconj`]: the conjecture and theorem checks and the per-group report.

pub mod blocktheory;
pub mod chartable;
pub mod cyclo;
mod error;
pub mod ffield;
pub mod permgroup;
pub mod realconj;

pub use error::{Error, Result};

/// Largest group order accepted by the enumeration-based algorithms unless a
/// caller overrides it.
pub const DEFAULT_MAX_ORDER: u64 = 20_000;
