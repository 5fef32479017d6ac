//! Vertex universes, the bipartite-graph abstraction with explicit neighbor
//! oracles, and the base-graph providers (complete, seeded random, explicit).

mod explicit;
mod manifest;
mod providers;
mod universe;

use std::sync::Arc;

pub use explicit::{edge_dump, ExplicitGraph};
pub use manifest::GraphManifest;
pub use providers::{
    complete_bipartite, derive_seed, random_regular_graph, stream_key, CompleteGraph, RandomGraph,
    RandomGraphSeed, RANDOM_GENERATOR,
};
pub use universe::{Universe, UniverseKind, UniverseManifest, MATERIALIZE_LIMIT};

use crate::error::GraphError;
use crate::label::BitLabel;

/// A bipartite graph given by its two universes and a neighbor oracle.
///
/// `neighbors(x)` returns `None` exactly when `x` is outside the left
/// universe. Lists may contain repeated labels; set-valued computations
/// deduplicate. Implementations are immutable and shareable across threads.
pub trait BipartiteGraph: Send + Sync {
    fn left(&self) -> &Universe;
    fn right(&self) -> &Universe;

    /// The full neighbor list of `x` in oracle order.
    fn neighbors(&self, x: &BitLabel) -> Option<Vec<BitLabel>>;

    fn degree(&self, x: &BitLabel) -> Option<usize> {
        self.neighbors(x).map(|n| n.len())
    }

    /// The `i`-th neighbor of `x`.
    fn neighbor(&self, x: &BitLabel, i: usize) -> Option<BitLabel> {
        self.neighbors(x)?.into_iter().nth(i)
    }

    /// Structural description, without certificates.
    fn manifest(&self) -> GraphManifest;
}

pub type Graph = Arc<dyn BipartiteGraph>;

/// Every left label exactly once, ordered by `(length, lex)`.
pub fn enumerate_left(g: &dyn BipartiteGraph) -> Result<Vec<BitLabel>, GraphError> {
    g.left().to_vec()
}

/// Distinct neighbors of `x`, sorted.
pub fn neighbor_set(g: &dyn BipartiteGraph, x: &BitLabel) -> Option<Vec<BitLabel>> {
    let mut v = g.neighbors(x)?;
    v.sort();
    v.dedup();
    Some(v)
}
