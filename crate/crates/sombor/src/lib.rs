//! Sombor-family topological indices on ensembles of random graphs.
//!
//! The crate samples three random-graph models (Erdős–Rényi, random
//! geometric, bipartite random), computes the `KA¹_{α,β}` index family as
//! edge sums, evaluates the dense-limit predictions each model admits, and
//! drives Monte-Carlo sweeps that average indices over seeded replica
//! ensembles. A spectral layer builds randomly weighted adjacency matrices
//! and measures eigenvector Shannon entropies so that scaled indices can be
//! compared against a standard random-matrix complexity measure.
//!
//! Everything is deterministic given a master seed: replica streams are
//! derived by a splitmix-style mixer, so sweeps can run on any number of
//! threads and still reproduce bit-identical ensemble means.

pub mod ensemble;
pub mod error;
pub mod generators;
pub mod graph;
pub mod indices;
pub mod spectral;
pub mod theory;

pub use error::{Error, Result};
pub use generators::{mix_seed, ModelFamily, ModelParams, SeedSpec};
pub use graph::{BipartitePartition, Graph};
pub use indices::{ka1_index, IndexSpec};
