//! Canonical forms, exhaustive generation of connected graphs, graph6 stream
//! ingestion, and the sweep that runs every checker over a corpus.

mod canon;
mod generate;
mod ingest;
mod sweep;

use thiserror::Error;

pub use canon::{
    canonical_form, canonical_graph, canonical_labeling, rooted_labeling, CanonError,
    CanonicalForm, Labeling, CANON_MAX_N,
};
pub use generate::{
    connected_graphs, connected_graphs_par, connected_graphs_shard, ConnectedGraphs, ENUM_MAX_N,
};
pub use ingest::{ingest_graph6_stream, IngestError, IngestedGraph};
pub use sweep::{
    verify_theorem, MismatchRecord, NStats, ReductionGap, Suite, SweepOptions, SweepReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("order {0} outside the enumerator range 1..={ENUM_MAX_N}")]
    OrderOutOfRange(usize),
    #[error("invalid shard {shard} of {shards}")]
    BadShard { shard: usize, shards: usize },
}
