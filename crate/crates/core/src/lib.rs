//! Exact effect of adding one shortcut ("inset") edge to a tree.
//!
//! For every non-tree vertex pair `xy`, adding the edge `xy` shortens
//! some pairwise distances; `dprime = D(T) - D(T+xy)` is the exact drop
//! of the Wiener index and `adprime = dprime / C(n,2)` the drop of the
//! average distance. This crate computes `dprime` for all inset edges at
//! once with an incremental middle-based sweep whose total cost tracks
//! the Wiener index of the input tree, plus direct per-edge evaluators
//! used as cross-checking oracles, and query utilities over the results.

pub mod delta;
pub mod error;
pub mod query;
pub mod rational;
pub mod report;
pub mod splits;
pub mod sweep;
pub mod tree;

pub use delta::{
    adprime, coefficient_matrix, cycle_partition, dprime_from_weights, dprime_pairwise,
    dprime_shortcut, weight_vectors, Apsp, CoefficientMatrix, CyclePartition, WeightVectors,
};
pub use error::{Error, Result};
pub use query::{build_index, sort_records, DeltaIndex, Metric, QueryResult};
pub use rational::{format_decimal, parse_rational, Rational};
pub use splits::{
    average_distance, edge_splits, wiener_bfs, wiener_from_splits, wiener_lower_bound,
    wiener_upper_bound, SplitTable,
};
pub use sweep::{
    enumerate_middles, extend_frame, init_edge_frames, init_vertex_frames, middle_of, sweep_all,
    sweep_all_with, sweep_middle, sweep_parallel, sweep_traced, InsetRecord, Middle, SweepFrame,
    SweepOptions, SweepStats,
};
pub use tree::{
    generate, parse_tree, tree_path, DistanceSum, EdgeId, Tree, TreeKind, VertexId, MAX_VERTICES,
};

/// Inset-edge record sets larger than this are refused rather than
/// materialized; streaming consumers (the sweep sinks) are unaffected.
pub const MAX_RECORDS: u64 = 50_000_000;
