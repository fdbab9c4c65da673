//! Learning discrete Bayesian belief-network structures from complete case
//! databases.
//!
//! Structures are scored by their K2 marginal likelihood
//! ([`scoring`]) and searched greedily with K2 or exhaustively under a node
//! ordering ([`search`]). [`simulate`] draws synthetic databases from a
//! network and fits CPTs back, and [`model`] holds the domain types and
//! enumeration-based inference.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the `*64` and
//! `*32` aliases below name the common instantiations.

pub mod bundled;
pub mod error;
pub mod io;
pub mod model;
mod real;
pub mod scoring;
pub mod search;
pub mod simulate;

#[cfg(test)]
mod testdata;

pub use error::{Error, Result};
pub use model::{
    joint_probability, query, topological_order, validate_network, Database, Network, Ordering,
    Structure, Variable, Violation,
};
pub use real::{log_sum_exp, Real};
pub use scoring::{
    compare, g_log, normalized_posteriors, structure_log_score, tabulate_counts, Comparison,
    CountTable, LogScore, PriorMode, Scorer,
};
pub use search::{
    best_parents_exhaustive, count_dags, count_ordered, enumerate_all_dags,
    exhaustive_ordered_search, k2, SearchConfig, SearchResult,
};
pub use simulate::{fit_parameters, reconstruction_experiment, sample_cases, RandomStream};

pub type Network64 = Network<f64>;
pub type Network32 = Network<f32>;
pub type LogScore64 = LogScore<f64>;
pub type LogScore32 = LogScore<f32>;
pub type SearchResult64 = SearchResult<f64>;
pub type SearchResult32 = SearchResult<f32>;
pub type Scorer64<'a> = Scorer<'a, f64>;
pub type Scorer32<'a> = Scorer<'a, f32>;
