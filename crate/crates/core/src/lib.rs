//! Performance-portability analysis.
//!
//! The portability of an application solving a problem over a set of
//! platforms `H` is the harmonic mean of its per-platform performance
//! efficiencies, or zero if any platform in `H` is unsupported:
//!
//! ```text
//! PP(a, p, H) = |H| / Σ_{i ∈ H} 1 / e_i(a, p)   if every i ∈ H is supported
//!             = 0                                 otherwise
//! ```
//!
//! Efficiencies come in two kinds: architectural (fraction of theoretical
//! peak) and application (fraction of the best observed performance).
//!
//! ```
//! use ppmetric::{corpus, pp_for, AnalysisOptions, EfficiencyKind, PlatformSet};
//!
//! let c = corpus("tableI").unwrap();
//! let set = PlatformSet::parse("ABC:A,B,C").unwrap();
//! let app = c.dataset.applications(&c.problem)[0].clone();
//! let r = pp_for(&app, &c.problem, &set, EfficiencyKind::Application, &c.dataset,
//!                &AnalysisOptions::default()).unwrap();
//! assert!((r.value - 3.0 / 4.25).abs() < 1e-15);
//! ```

pub mod data;
pub mod efficiency;
pub mod error;
pub mod json;
pub mod metric;
pub mod model;
pub mod report;

pub use data::{
    corpus, load_dataset, load_externals, load_measurements, load_specs, parse_sets, save_dataset,
    Corpus, Dataset, Format, Reduce,
};
pub use efficiency::{
    application_efficiency, architectural_efficiency, derive_best_observed, BestObserved,
    CeilingSource, ClampPolicy, Efficiency, EfficiencyKind, EfficiencyRecord, UnsupportedReason,
};
pub use error::{DataError, EfficiencyError, MetricError, ModelError};
pub use metric::{
    harmonic_mean, pp, pp_for, subset_analysis, supported_subset, AnalysisOptions, Cell, Matrix,
    PPResult,
};
pub use model::{
    validate_dataset, ApplicationId, Measurement, MeasurementKey, MetricKind, Orientation, Outcome,
    PlatformId, PlatformSet, PlatformSpec, ProblemId, ValidationOptions, ValidationReport,
    Violation,
};
