//! Elastic time-series distances, distance-based partitional clustering
//! and the evaluation machinery around them: ten distance kernels with
//! Sakoe-Chiba banding, barycentre averaging, k-means / k-medoids,
//! supervised and unsupervised clustering metrics, and rank-based
//! multi-dataset comparison.

pub mod averaging;
pub mod clustering;
pub mod distances;
pub mod error;
pub mod metrics;
pub mod series;
pub mod stats;

pub use error::{Result, TsclError};
pub use series::{derivative_transform, z_normalize, Dataset, TimeSeries};

pub use distances::{
    distance, pairwise_distance, resolve_distance, resolve_named, AlignmentPath, CostMatrix,
    DistanceFn, DistanceKind, DistanceSpec,
};
