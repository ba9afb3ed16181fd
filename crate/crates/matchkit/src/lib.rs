//! Toolkit for exact-weight perfect matching and conservative-weight cycle
//! problems.
//!
//! The core engine finds an `l`-th smallest perfect matching by sweeping
//! forced edge sets of bounded size ([`spm`]), on top of a blossom
//! minimum-weight perfect matching solver ([`pm`]). Weight-preserving
//! reductions connect the matching problems EWPM/BCPM to the cycle problems
//! ECS/SOC in both directions, with solution translation ([`reductions`]).
//! Exhaustive oracles certify every component on small instances
//! ([`pm::enumerate_perfect_matchings`], [`cycles`]).

pub mod blossom;
pub mod cycles;
pub mod error;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod pm;
pub mod reductions;
pub mod spm;

pub use error::Error;
pub use graph::{CycleSet, Graph, Matching};
pub use instance::{ProblemKind, WeightedInstance};

/// Edge weights are 64-bit signed integers throughout.
pub type Weight = i64;

/// Default vertex cap for exhaustive enumeration oracles, overridable via
/// the `MATCHKIT_BRUTE_LIMIT` environment variable.
pub const DEFAULT_BRUTE_LIMIT: usize = 12;

/// Resolve the brute-force vertex cap from the environment.
pub fn brute_limit() -> usize {
    std::env::var("MATCHKIT_BRUTE_LIMIT")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_BRUTE_LIMIT)
}
