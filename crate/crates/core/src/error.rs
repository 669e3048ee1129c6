use std::path::PathBuf;

use thiserror::Error;

use crate::model::{MetricKind, PlatformId, ValidationReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("{0} identifier must not be empty")]
    EmptyIdentifier(&'static str),
    #[error("unknown orientation `{0}` (expected `rate` or `time`)")]
    UnknownOrientation(String),
    #[error("platform set `{0}` has no members")]
    EmptyPlatformSet(String),
    #[error("platform set `{set}` lists platform {platform} more than once")]
    DuplicatePlatform { set: String, platform: PlatformId },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EfficiencyError {
    #[error("platform {platform} has no peak for {metric}")]
    MissingPeak {
        platform: PlatformId,
        metric: MetricKind,
    },
    #[error(
        "architectural efficiency needs a rate-oriented metric, got {0}; use application efficiency for time-oriented metrics"
    )]
    TimeOrientedArchitectural(MetricKind),
    #[error("measurement and ceiling disagree on {0}")]
    KeyMismatch(&'static str),
    #[error("ceiling {value} for {platform} is not positive and finite")]
    InvalidCeiling { platform: PlatformId, value: f64 },
    #[error(
        "observed {observed} on {platform} beats the ceiling {ceiling} ({metric}); check the ceiling data or enable clamping"
    )]
    ExceedsCeiling {
        platform: PlatformId,
        metric: MetricKind,
        observed: f64,
        ceiling: f64,
    },
    #[error("no supported measurement for ({problem}, {platform}, {metric})")]
    NoSupportedMeasurement {
        problem: String,
        platform: PlatformId,
        metric: MetricKind,
    },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("performance portability over an empty platform set is undefined")]
    EmptySet,
    #[error("missing peak for {metric} on: {}", join_platforms(platforms))]
    MissingPeaks {
        metric: MetricKind,
        platforms: Vec<PlatformId>,
    },
    #[error("problem `{0}` has no measurements")]
    UnknownProblem(String),
    #[error("problem `{problem}` has no {wanted} metric")]
    NoMetric { problem: String, wanted: String },
    #[error(transparent)]
    Efficiency(#[from] EfficiencyError),
}

fn join_platforms(platforms: &[PlatformId]) -> String {
    platforms
        .iter()
        .map(PlatformId::as_str)
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Error)]
pub enum DataError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{location}: {message}")]
    Malformed { location: String, message: String },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("duplicate tuple after run reduction: {0}")]
    DuplicateTuple(String),
    #[error("dataset failed validation:\n{0}")]
    Invalid(ValidationReport),
    #[error("unknown bundled corpus `{0}`")]
    UnknownCorpus(String),
    #[error("platform sets, line {line}: {message}")]
    BadSet { line: usize, message: String },
}

impl DataError {
    /// Whether this error comes from the environment (file access) rather
    /// than from the content of the data.
    pub fn is_io(&self) -> bool {
        matches!(self, Self::Io { .. })
    }
}
