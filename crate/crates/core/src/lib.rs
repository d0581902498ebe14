//! Engine for ε-greedy exploration of an index-based multimedia search space.
//!
//! A query returns an *M-list*: `K` exploitation slots filled with the
//! objects holding the highest relevance index values (RIVs) for the query
//! label, plus `r` exploration slots filled at random from the rest of the
//! catalog. Two exploration variants are provided:
//!
//! * [`Algorithm::A`] re-draws the exploration slots from scratch on every
//!   presentation, so an object can be shown again. The discovery time of a
//!   hidden object is geometric.
//! * [`Algorithm::B`] remembers which objects a session already explored and
//!   never shows them again. The discovery time is uniform over
//!   `1..=⌈(N−K)/r⌉`.
//!
//! The crate is `no_std` (it needs `alloc`). IO, the command-line front end
//! and the parallel trial runner live in the `egse` crate.
//!
//! Modules:
//!
//! * [`catalog`]: synthetic labeled object universe and the RIV store.
//! * [`exploration`]: M-list construction for both variants.
//! * [`analytics`]: exact discovery-time distributions and moments.
//! * [`feedback`]: click model, precision and the index evolution loop.
//! * [`simulation`]: Monte-Carlo discovery trials and convergence traces.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytics;
pub mod catalog;
mod error;
pub mod exploration;
pub mod feedback;
pub mod rng;
pub mod simulation;

pub use analytics::{DiscoveryDistribution, SearchSpace};
pub use catalog::{Catalog, Label, ObjectId, RivStore};
pub use error::{Error, Result};
pub use exploration::{Algorithm, ExclusionPolicy, ExplorationConfig, MList, SessionState};
pub use feedback::{ClickModel, EvolutionParams, EvolutionTrace};
pub use simulation::{Case, ConvergenceTrace, TrialBatch};

/// Exact rational number used by the analytics module.
pub type Rational = num_rational::BigRational;
