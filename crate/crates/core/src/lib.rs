//! Learning the edge set of a hidden graph through OR queries.
//!
//! A query submits a vertex set and learns only whether it spans at least
//! one hidden edge. The crate provides:
//!
//! - an oracle that answers OR queries while counting classical queries and
//!   separately charged quantum queries ([`oracle`]);
//! - group-testing solvers over that oracle: a real classical adaptive one
//!   and an idealized quantum one whose cost follows a pluggable model
//!   ([`cgt`]);
//! - classical divide-and-conquer learners ([`classical`]) and the
//!   randomized signature-based learners that reach `~sqrt(m)` charged
//!   queries on bounded-degree graphs ([`quantum`]);
//! - benchmark graph families, partitions, and coloring ([`families`],
//!   [`partition`]);
//! - an experiment harness with sweeps, scaling fits, concentration audits,
//!   and SVG plots ([`harness`], [`fit`], [`plot`]).
//!
//! Everything is deterministic given the seeds in play.

pub mod cgt;
pub mod classical;
pub mod families;
pub mod fit;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod partition;
pub mod plot;
pub mod quantum;
pub mod rng;

pub use cgt::{CgtInstance, CostKind, CostModel};
pub use classical::{learn_all_edges_classical, learn_bipartite_independent_classical, KnownEdges};
pub use graph::{Edge, Graph, GraphError, Vertex};
pub use oracle::{Counters, OrOracle};
pub use quantum::{
    find_edges, learn_bipartite_crossings, learn_crossings_general, learn_matching, LearnOpts,
    LearnOutcome, LevelSchedule, SignatureMatrix,
};
