//! Deterministic parallel multilevel hypergraph partitioner.
//!
//! Produces balanced k-way partitions minimizing the weighted hyperedge cut
//! (sum over hyperedges of weight times one less than the number of parts
//! the hyperedge spans). The output is bit-identical regardless of worker
//! thread count: every parallel phase is either an indexed map of pure
//! per-element functions or a commutative-associative integer reduction,
//! and all tie-breaking is by node or hyperedge id.
//!
//! The pipeline is the classic multilevel scheme: repeated deterministic
//! multi-node matching and coarsening, a greedy gain-driven bipartition of
//! the coarsest graph, then projection with gain-ordered swap refinement
//! and rebalancing at every level. k-way output comes from level-synchronous
//! recursive bisection.
//!
//! ```
//! use hyperpart::{bipartition, Hypergraph, Params};
//!
//! let h = Hypergraph::from_hedges(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
//! let out = bipartition(&h, &Params::default());
//! assert_eq!(hyperpart::metrics::cut(&h, &out.partition), 0);
//! ```

mod balance;
pub mod cli;
pub mod coarsen;
pub mod hypergraph;
pub mod initial;
pub mod io;
pub mod kway;
pub mod matching;
pub mod metrics;
mod par;
pub mod params;
pub mod partition;
pub mod refine;

pub use coarsen::{coarsen_chain, coarsen_once, CoarseningLevel, MultilevelHierarchy};
pub use hypergraph::{transpose, Hypergraph};
pub use initial::{compute_gains, initial_partition};
pub use kway::{bipartition, kway_partition, BipartitionOutcome, KwayError, KwayOutcome};
pub use matching::{compute_matching, groups_of, splitmix64, MatchingPolicy, MatchingState};
pub use params::{Imbalance, Params};
pub use partition::Partition;
pub use refine::{project, rebalance, refine};
