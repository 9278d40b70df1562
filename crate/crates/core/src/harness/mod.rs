//! Numerical experiments: discrepancy bounds, counting gaps, the two
//! counterexample constructions, trimming and truncation.

pub mod counterexamples;
pub mod counting;
pub mod discrepancy;
pub mod host;
pub mod trim;
pub mod truncation;

pub use counterexamples::{c4_counterexample, triangle_counterexample, C4Report, TriangleReport};
pub use counting::{counting_experiment, Alpha, GapReport};
pub use discrepancy::{discrepancy_search, discrepancy_spectral, estimate_against_constant, DiscrepancyEstimate};
pub use host::{constant_host, constant_level, partition_host};
pub use trim::{trim, trim_with, TrimReport};
pub use truncation::{truncation_check, TruncationReport};
