//! Derivation certificates for tame and countable patterns, their search,
//! and empirical checks that do not amount to proofs.

pub mod countable;
pub mod json;
pub mod refute;
pub mod scale;
pub mod search;
pub mod tame;

pub use countable::{replay_countable, verify_countable_cert, Condition, Connector, CountableCertificate, Island, Violation};
pub use json::{CertificateFile, Tree};
pub use refute::{refute_tame_empirical, RefuteReport};
pub use scale::{compute_scale_constant, ScaleReport};
pub use search::{search_countable, search_tame, Engine, SearchConfig, Status, TameVerdict, Verdict, DEFAULT_BUDGET};
pub use tame::{verify_tame_cert, verify_tame_cert_with, TameBase, TameCertificate, TameStep, K4_SUBDIVIDED};

#[cfg(test)]
mod tests;
