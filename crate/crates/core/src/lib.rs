//! Equality and hierarchical-mobility measures for growing networks.
//!
//! The pipeline reads a timestamped edge list into a canonical [`EdgeStream`],
//! takes cumulative snapshots of it, and derives:
//!
//! * the Gini coefficient of the degree distribution over time ([`equality`]);
//! * six Pearson correlations between node degree, degree gain, neighbourhood
//!   mean degree and its gain between two cuts ([`taxonomy`]);
//! * a joint two-component PCA of those seven features ([`pca`]).
//!
//! [`generators`] provides preferential- and rank-attachment growth models
//! for synthetic input.

pub mod corpus;
pub mod equality;
pub mod error;
pub mod generators;
pub mod numfmt;
pub mod pca;
pub mod snapshot;
pub mod stream;
pub mod taxonomy;

pub use corpus::{parse_manifest, CorpusEntry, DataType, Structure};
pub use equality::{equality_trajectory, gini, EqualityPoint, EqualityTrajectory, Spacing};
pub use error::{Error, Result};
pub use generators::{generate_ba, generate_fortunato, GrowthConfig, GrowthModel};
pub use pca::{pca_project, FeatureMatrix, PcaResult, Scaling};
pub use snapshot::{snapshot, CutMode, CutSpec, SnapshotView};
pub use stream::{
    canonicalize, parse_edge_list, Delimiter, EdgeStream, FormatOptions, NodeId, RawEdge,
    TemporalEdge,
};
pub use taxonomy::{
    node_trajectories, pearson, taxonomy_point, taxonomy_trajectory, Aspect, Aspects,
    NodeTrajectory, TaxonomyPoint,
};
