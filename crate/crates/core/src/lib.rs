//! Fingerprint invariant `[alpha; beta]` of rigid unipotent and rigid semisimple classes in the
//! B, C and D classical theories.
//!
//! Two independent routes to `mu = Sp(lambda)` are provided: the row-by-row rule in
//! [`engine`] and the block decomposition in [`blocks`]. Closed forms for unipotent classes
//! live in [`unipotent`], and [`checks`] binds the structural properties into runnable suites.

pub mod blocks;
pub mod catalog;
pub mod checks;
pub mod engine;
pub mod error;
pub mod partition;
pub mod render;
pub mod sweep;
pub mod tagged;
pub mod unipotent;

pub use engine::{fingerprint, FingerprintOptions, FingerprintResult, SpTrace, WeylPair};
pub use error::Error;
pub use partition::{parse_partition, OperatorPair, Partition, Theory};
pub use tagged::{combine, CombineMode, TaggedPartition, TieBreak};
