//! Countability and tameness of graph patterns in C4-free host graphs.
//!
//! The crate covers polarity-graph construction over small finite fields,
//! exact weighted homomorphism counting by variable elimination,
//! derivation certificates for tame and countable patterns, and numerical
//! experiments around discrepancy and one-sided counting.

pub mod certify;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod harness;
pub mod homcount;
pub mod polarity;
pub mod rng;
pub mod surd;

pub use error::{Error, Result};
pub use graph::{Graph, RootedPattern};
pub use surd::Surd;

/// Library version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
