use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Error)]
pub enum TsclError {
    #[error("series contains a non-finite value at index {index}")]
    NonFiniteValue { index: usize },

    #[error("series is empty")]
    EmptySeries,

    #[error("series too short: need at least {need} points, got {got}")]
    SeriesTooShort { need: usize, got: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("unknown distance measure `{0}`")]
    UnknownDistance(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("dataset series have unequal lengths ({0} vs {1})")]
    UnequalLengths(usize, usize),

    #[error("labels length {labels} does not match number of series {series}")]
    LabelCountMismatch { labels: usize, series: usize },

    #[error("empty cluster supplied")]
    EmptyCluster,

    #[error("k = {k} exceeds number of series n = {n}")]
    TooManyClusters { k: usize, n: usize },

    #[error("degenerate clustering: {0}")]
    DegenerateClustering(String),

    #[error("metric input invalid: {0}")]
    MetricInput(String),

    #[error("signed-rank test undefined: all paired differences are zero")]
    UndefinedTest,

    #[error("results table is empty")]
    EmptyTable,
}

pub type Result<T> = std::result::Result<T, TsclError>;
