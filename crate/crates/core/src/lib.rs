//! Masking quorum systems: constructions, combinatorial analysis, load and
//! crash probability.
//!
//! Systems are described by a [`ConstructionSpec`] and built into a
//! [`QuorumSystemHandle`], which answers liveness queries and samples quorums
//! without listing them. Small systems can be materialized into an
//! [`ExplicitQuorumSystem`] for exact analysis.

pub mod analysis;
pub mod availability;
pub mod combinatorics;
pub mod composition;
pub mod constructions;
mod error;
pub mod model;
pub mod paths;

pub use constructions::{build, ConstructionSpec, QuorumSystemHandle};
pub use error::{Error, Result};
pub use model::{
    AccessStrategy, ElementSet, ExplicitQuorumSystem, LivePredicate, Rng, SystemParams, Universe,
};
