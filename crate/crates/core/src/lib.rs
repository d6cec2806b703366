//! Local estimators for random-walk hitting times and effective resistances.
//!
//! The crate is organized bottom-up:
//!
//! - [`graph`], [`generate`], [`centrality`], [`pairs`], [`datasets`]: graph
//!   storage, generators, stationary distribution, PageRank and query-pair
//!   sampling.
//! - [`walks`]: a seedable random-walk engine with per-walker streams.
//! - [`exact`]: linear-algebra ground truth (hitting times, effective
//!   resistance, spectrum, mixing time, meeting-time tails, the spectral
//!   hitting-time series).
//! - [`estimators`]: the meeting-time, cutoff and walk-sampling estimators.
//! - [`mixing`]: local mixing times, l1 closeness testing, mixing tests and
//!   the truncated effective-resistance series.
//! - [`bench`]: the experiment harness behind the `hitbench` binary.
//!
//! Every randomized routine takes an explicit `u64` seed and produces the
//! same output regardless of the number of rayon threads.

pub mod bench;
pub mod centrality;
pub mod datasets;
pub mod error;
pub mod estimators;
pub mod exact;
pub mod generate;
pub mod graph;
pub mod mixing;
pub mod pairs;
pub mod rng;
pub mod stats;
pub mod walks;

pub use centrality::{pagerank, stationary, StationaryDist};
pub use error::{Error, Result};
pub use graph::{Graph, Ingested};
pub use pairs::{PairSampler, PairStrategy};
pub use walks::{HitRecord, WalkEnsemble};
