//! Structure search under a node ordering.

mod counting;
mod exhaustive;
mod k2;

pub use counting::{
    count_dags, count_ordered, enumerate_all_dags, ln_biguint, DagIter, MAX_ENUMERATION_NODES,
};
pub use exhaustive::{best_parents_exhaustive, exhaustive_ordered_search};
pub use k2::{k2, NodeTrace, SearchConfig, SearchResult, TraceStep};
