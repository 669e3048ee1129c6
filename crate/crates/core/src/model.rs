//! Domain vocabulary: platforms, applications, problems, measurements and
//! the structural validation every other module relies on.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// Identity of an execution environment (hardware, OS and toolchain folded
/// into one label). Comparison is exact and case-sensitive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlatformId(String);

impl PlatformId {
    pub fn new(name: impl Into<String>) -> Result<Self, ModelError> {
        let name = name.into();
        if name.is_empty() {
            return Err(ModelError::EmptyIdentifier("platform"));
        }
        Ok(Self(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PlatformId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An application, optionally qualified by an implementation variant
/// (e.g. the programming model). `name/variant` is the display form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ApplicationId {
    name: String,
    variant: Option<String>,
}

impl ApplicationId {
    pub fn new(name: impl Into<String>, variant: Option<String>) -> Result<Self, ModelError> {
        let name = name.into();
        if name.is_empty() {
            return Err(ModelError::EmptyIdentifier("application"));
        }
        let variant = variant.filter(|v| !v.is_empty());
        Ok(Self { name, variant })
    }

    /// Parses `NAME` or `NAME/VARIANT`.
    pub fn parse(spec: &str) -> Result<Self, ModelError> {
        match spec.split_once('/') {
            Some((name, variant)) => Self::new(name, Some(variant.to_owned())),
            None => Self::new(spec, None),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn variant(&self) -> Option<&str> {
        self.variant.as_deref()
    }
}

impl fmt::Display for ApplicationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.variant {
            Some(v) => write!(f, "{}/{}", self.name, v),
            None => f.write_str(&self.name),
        }
    }
}

/// A problem: one input configuration. Efficiencies and portability values
/// are always per problem.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProblemId {
    name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    parameters: BTreeMap<String, String>,
}

impl ProblemId {
    pub fn new(name: impl Into<String>) -> Result<Self, ModelError> {
        Self::with_parameters(name, BTreeMap::new())
    }

    pub fn with_parameters(
        name: impl Into<String>,
        parameters: BTreeMap<String, String>,
    ) -> Result<Self, ModelError> {
        let name = name.into();
        if name.is_empty() {
            return Err(ModelError::EmptyIdentifier("problem"));
        }
        Ok(Self { name, parameters })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn parameters(&self) -> &BTreeMap<String, String> {
        &self.parameters
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.parameters.is_empty() {
            let params: Vec<String> = self
                .parameters
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            write!(f, " [{}]", params.join(", "))?;
        }
        Ok(())
    }
}

/// Whether a larger (rate) or smaller (time) observed value is better.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Rate,
    Time,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Rate => "rate",
            Self::Time => "time",
        }
    }

    /// True when `a` is strictly better than `b` under this orientation.
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Self::Rate => a > b,
            Self::Time => a < b,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Orientation {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rate" => Ok(Self::Rate),
            "time" => Ok(Self::Time),
            other => Err(ModelError::UnknownOrientation(other.to_owned())),
        }
    }
}

/// A performance metric: orientation plus an opaque unit label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MetricKind {
    pub orientation: Orientation,
    pub units: String,
}

impl MetricKind {
    pub fn new(orientation: Orientation, units: impl Into<String>) -> Self {
        Self {
            orientation,
            units: units.into(),
        }
    }

    pub fn rate(units: impl Into<String>) -> Self {
        Self::new(Orientation::Rate, units)
    }

    pub fn time(units: impl Into<String>) -> Self {
        Self::new(Orientation::Time, units)
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.units, self.orientation)
    }
}

/// Result of running an application on a platform.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Outcome {
    /// Correct execution with the observed value in metric units.
    Supported(f64),
    /// Declared failure: the application cannot solve the problem here.
    Unsupported,
}

impl Outcome {
    pub fn value(self) -> Option<f64> {
        match self {
            Self::Supported(v) => Some(v),
            Self::Unsupported => None,
        }
    }

    pub fn is_supported(self) -> bool {
        matches!(self, Self::Supported(_))
    }
}

/// Key identifying one measurement slot in a dataset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeasurementKey {
    pub application: ApplicationId,
    pub problem: ProblemId,
    pub platform: PlatformId,
    pub metric: MetricKind,
}

impl fmt::Display for MeasurementKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.application, self.problem, self.platform, self.metric
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Measurement {
    pub application: ApplicationId,
    pub problem: ProblemId,
    pub platform: PlatformId,
    pub metric: MetricKind,
    pub outcome: Outcome,
}

impl Measurement {
    pub fn supported(
        application: ApplicationId,
        problem: ProblemId,
        platform: PlatformId,
        metric: MetricKind,
        value: f64,
    ) -> Self {
        Self {
            application,
            problem,
            platform,
            metric,
            outcome: Outcome::Supported(value),
        }
    }

    pub fn unsupported(
        application: ApplicationId,
        problem: ProblemId,
        platform: PlatformId,
        metric: MetricKind,
    ) -> Self {
        Self {
            application,
            problem,
            platform,
            metric,
            outcome: Outcome::Unsupported,
        }
    }

    pub fn key(&self) -> MeasurementKey {
        MeasurementKey {
            application: self.application.clone(),
            problem: self.problem.clone(),
            platform: self.platform.clone(),
            metric: self.metric.clone(),
        }
    }

    pub fn value(&self) -> Option<f64> {
        self.outcome.value()
    }

    pub fn is_supported(&self) -> bool {
        self.outcome.is_supported()
    }
}

/// Theoretical peak capability of a platform, per rate-oriented metric.
#[derive(Clone, Debug, PartialEq)]
pub struct PlatformSpec {
    pub platform: PlatformId,
    pub peaks: BTreeMap<MetricKind, f64>,
}

impl PlatformSpec {
    pub fn new(platform: PlatformId) -> Self {
        Self {
            platform,
            peaks: BTreeMap::new(),
        }
    }

    pub fn with_peak(mut self, metric: MetricKind, peak: f64) -> Self {
        self.peaks.insert(metric, peak);
        self
    }

    pub fn peak(&self, metric: &MetricKind) -> Option<f64> {
        self.peaks.get(metric).copied()
    }
}

/// A named, ordered, duplicate-free, non-empty collection of platforms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PlatformSet {
    label: String,
    members: Vec<PlatformId>,
}

impl PlatformSet {
    pub fn new(label: impl Into<String>, members: Vec<PlatformId>) -> Result<Self, ModelError> {
        let label = label.into();
        if label.is_empty() {
            return Err(ModelError::EmptyIdentifier("platform set label"));
        }
        if members.is_empty() {
            return Err(ModelError::EmptyPlatformSet(label));
        }
        let mut seen = BTreeSet::new();
        for m in &members {
            if !seen.insert(m) {
                return Err(ModelError::DuplicatePlatform {
                    set: label,
                    platform: m.clone(),
                });
            }
        }
        Ok(Self { label, members })
    }

    /// Parses `label:p1,p2,...`. Without a label the member list itself is
    /// used as the label.
    pub fn parse(spec: &str) -> Result<Self, ModelError> {
        let (label, list) = match spec.split_once(':') {
            Some((label, list)) => (label.trim().to_owned(), list),
            None => (spec.trim().to_owned(), spec),
        };
        let members = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(PlatformId::new)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(label, members)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn members(&self) -> &[PlatformId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, platform: &PlatformId) -> bool {
        self.members.contains(platform)
    }
}

impl fmt::Display for PlatformSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.members.iter().map(PlatformId::as_str).collect();
        write!(f, "{} = {{{}}}", self.label, names.join(", "))
    }
}

/// One structural problem found by [`validate_dataset`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    DuplicateMeasurement(MeasurementKey),
    /// A supported measurement whose value is zero, negative or non-finite.
    InvalidValue {
        key: MeasurementKey,
        value: String,
    },
    MixedUnits {
        problem: String,
        orientation: Orientation,
        units: Vec<String>,
    },
    ConflictingProblemParameters {
        problem: String,
    },
    DuplicateSpec(PlatformId),
    TimeOrientedPeak {
        platform: PlatformId,
        units: String,
    },
    InvalidPeak {
        platform: PlatformId,
        units: String,
        value: String,
    },
    /// A supported rate measurement on a platform whose spec lacks a peak
    /// for the metric (only checked when architectural efficiency is wanted).
    MissingPeak {
        platform: PlatformId,
        metric: MetricKind,
    },
    DuplicateExternal {
        problem: String,
        platform: PlatformId,
        metric: MetricKind,
    },
    InvalidExternal {
        problem: String,
        platform: PlatformId,
        value: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DuplicateMeasurement(k) => write!(f, "duplicate measurement tuple {k}"),
            Self::InvalidValue { key, value } => {
                write!(f, "measurement {key} has non-positive or non-finite value {value}")
            }
            Self::MixedUnits { problem, orientation, units } => write!(
                f,
                "problem {problem} mixes {orientation} units: {}",
                units.join(", ")
            ),
            Self::ConflictingProblemParameters { problem } => {
                write!(f, "problem {problem} appears with conflicting parameters")
            }
            Self::DuplicateSpec(p) => write!(f, "platform {p} has more than one spec"),
            Self::TimeOrientedPeak { platform, units } => write!(
                f,
                "platform {platform} declares a peak for time-oriented metric {units}; peaks are rate-only"
            ),
            Self::InvalidPeak { platform, units, value } => {
                write!(f, "platform {platform} peak {units} = {value} is not positive and finite")
            }
            Self::MissingPeak { platform, metric } => {
                write!(f, "platform {platform} has measurements in {metric} but no peak for it")
            }
            Self::DuplicateExternal { problem, platform, metric } => write!(
                f,
                "external ceiling for ({problem}, {platform}, {metric}) given more than once"
            ),
            Self::InvalidExternal { problem, platform, value } => write!(
                f,
                "external ceiling for ({problem}, {platform}) = {value} is not positive and finite"
            ),
        }
    }
}

/// All violations found in a dataset, sorted and deduplicated so the report
/// does not depend on input order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub(crate) fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort();
        violations.dedup();
        Self { violations }
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub(crate) fn merge(mut self, other: ValidationReport) -> Self {
        self.violations.extend(other.violations);
        Self::from_violations(self.violations)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ValidationOptions {
    /// Require a peak for every supported rate measurement.
    pub architectural: bool,
}

fn positive_finite(v: f64) -> bool {
    v.is_finite() && v > 0.0
}

/// Checks a measurement list and a spec list for internal consistency.
/// Never fails: every problem is collected into the report.
pub fn validate_dataset(
    measurements: &[Measurement],
    specs: &[PlatformSpec],
    options: ValidationOptions,
) -> ValidationReport {
    let mut out = Vec::new();

    let mut seen = BTreeSet::new();
    let mut units: BTreeMap<(&str, Orientation), BTreeSet<&str>> = BTreeMap::new();
    let mut params: BTreeMap<&str, &BTreeMap<String, String>> = BTreeMap::new();
    for m in measurements {
        let key = m.key();
        if let Outcome::Supported(v) = m.outcome {
            if !positive_finite(v) {
                out.push(Violation::InvalidValue {
                    key: key.clone(),
                    value: v.to_string(),
                });
            }
        }
        if !seen.insert(key.clone()) {
            out.push(Violation::DuplicateMeasurement(key));
        }
        units
            .entry((m.problem.name(), m.metric.orientation))
            .or_default()
            .insert(m.metric.units.as_str());
        match params.get(m.problem.name()) {
            Some(p) if *p != m.problem.parameters() => {
                out.push(Violation::ConflictingProblemParameters {
                    problem: m.problem.name().to_owned(),
                })
            }
            Some(_) => {}
            None => {
                params.insert(m.problem.name(), m.problem.parameters());
            }
        }
    }
    for ((problem, orientation), set) in units {
        if set.len() > 1 {
            out.push(Violation::MixedUnits {
                problem: problem.to_owned(),
                orientation,
                units: set.into_iter().map(str::to_owned).collect(),
            });
        }
    }

    let mut by_platform: BTreeMap<&PlatformId, &PlatformSpec> = BTreeMap::new();
    for spec in specs {
        if by_platform.insert(&spec.platform, spec).is_some() {
            out.push(Violation::DuplicateSpec(spec.platform.clone()));
        }
        for (metric, &peak) in &spec.peaks {
            if metric.orientation == Orientation::Time {
                out.push(Violation::TimeOrientedPeak {
                    platform: spec.platform.clone(),
                    units: metric.units.clone(),
                });
            }
            if !positive_finite(peak) {
                out.push(Violation::InvalidPeak {
                    platform: spec.platform.clone(),
                    units: metric.units.clone(),
                    value: peak.to_string(),
                });
            }
        }
    }

    if options.architectural {
        for m in measurements {
            if m.metric.orientation != Orientation::Rate || !m.is_supported() {
                continue;
            }
            let has_peak = by_platform
                .get(&m.platform)
                .is_some_and(|s| s.peak(&m.metric).is_some());
            if !has_peak {
                out.push(Violation::MissingPeak {
                    platform: m.platform.clone(),
                    metric: m.metric.clone(),
                });
            }
        }
    }

    ValidationReport::from_violations(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn app(n: &str) -> ApplicationId {
        ApplicationId::new(n, None).unwrap()
    }
    fn plat(n: &str) -> PlatformId {
        PlatformId::new(n).unwrap()
    }
    fn prob(n: &str) -> ProblemId {
        ProblemId::new(n).unwrap()
    }

    #[test]
    fn empty_identifiers_rejected() {
        assert!(PlatformId::new("").is_err());
        assert!(ApplicationId::new("", None).is_err());
        assert!(ProblemId::new("").is_err());
        assert_eq!(
            ApplicationId::new("x", Some(String::new()))
                .unwrap()
                .variant(),
            None
        );
    }

    #[test]
    fn platform_ids_are_case_sensitive() {
        assert_ne!(plat("a"), plat("A"));
    }

    #[test]
    fn application_parse() {
        let a = ApplicationId::parse("stream/OpenMP").unwrap();
        assert_eq!(a.name(), "stream");
        assert_eq!(a.variant(), Some("OpenMP"));
        assert_eq!(a.to_string(), "stream/OpenMP");
        assert_eq!(ApplicationId::parse("x").unwrap().variant(), None);
    }

    #[test]
    fn platform_set_rules() {
        assert!(matches!(
            PlatformSet::new("x", vec![]),
            Err(ModelError::EmptyPlatformSet(_))
        ));
        assert!(matches!(
            PlatformSet::new("x", vec![plat("A"), plat("A")]),
            Err(ModelError::DuplicatePlatform { .. })
        ));
        let s = PlatformSet::parse("cpus: A, B ,C").unwrap();
        assert_eq!(s.label(), "cpus");
        assert_eq!(s.members(), &[plat("A"), plat("B"), plat("C")]);
        let s = PlatformSet::parse("A,B").unwrap();
        assert_eq!(s.label(), "A,B");
        assert!(PlatformSet::parse("empty:").is_err());
    }

    #[test]
    fn duplicate_tuple_reported_once() {
        let m = Measurement::supported(app("x"), prob("p"), plat("A"), MetricKind::time("s"), 1.0);
        let report = validate_dataset(&[m.clone(), m], &[], ValidationOptions::default());
        assert_eq!(report.len(), 1);
        assert!(matches!(
            report.violations()[0],
            Violation::DuplicateMeasurement(_)
        ));
    }

    #[test]
    fn time_peak_is_orientation_violation() {
        let spec = PlatformSpec::new(plat("A")).with_peak(MetricKind::time("s"), 3.0);
        let report = validate_dataset(&[], &[spec], ValidationOptions::default());
        assert_eq!(
            report.violations(),
            &[Violation::TimeOrientedPeak {
                platform: plat("A"),
                units: "s".into()
            }]
        );
    }

    #[test]
    fn non_positive_values_and_peaks() {
        let m = Measurement::supported(app("x"), prob("p"), plat("A"), MetricKind::rate("G"), 0.0);
        let n = Measurement::supported(
            app("y"),
            prob("p"),
            plat("A"),
            MetricKind::rate("G"),
            f64::NAN,
        );
        let spec = PlatformSpec::new(plat("A")).with_peak(MetricKind::rate("G"), -1.0);
        let report = validate_dataset(&[m, n], &[spec], ValidationOptions::default());
        assert_eq!(report.len(), 3);
    }

    #[test]
    fn unsupported_values_are_ignored() {
        let m = Measurement::unsupported(app("x"), prob("p"), plat("A"), MetricKind::rate("G"));
        let report = validate_dataset(
            &[m],
            &[],
            ValidationOptions {
                architectural: true,
            },
        );
        assert!(report.is_empty());
    }

    #[test]
    fn mixed_units_and_missing_peaks() {
        let a = Measurement::supported(
            app("x"),
            prob("p"),
            plat("A"),
            MetricKind::rate("GB/s"),
            1.0,
        );
        let b = Measurement::supported(
            app("x"),
            prob("p"),
            plat("B"),
            MetricKind::rate("GiB/s"),
            1.0,
        );
        let spec = PlatformSpec::new(plat("A")).with_peak(MetricKind::rate("GB/s"), 2.0);
        let report = validate_dataset(
            &[a.clone(), b.clone()],
            std::slice::from_ref(&spec),
            ValidationOptions::default(),
        );
        assert_eq!(report.len(), 1);
        assert!(matches!(
            report.violations()[0],
            Violation::MixedUnits { .. }
        ));
        let report = validate_dataset(
            &[a, b],
            &[spec],
            ValidationOptions {
                architectural: true,
            },
        );
        assert_eq!(report.len(), 2);
        assert!(report.violations().contains(&Violation::MissingPeak {
            platform: plat("B"),
            metric: MetricKind::rate("GiB/s")
        }));
    }

    #[test]
    fn conflicting_problem_parameters() {
        let mut params = BTreeMap::new();
        params.insert("n".to_owned(), "10".to_owned());
        let p2 = ProblemId::with_parameters("p", params).unwrap();
        let a = Measurement::supported(app("x"), prob("p"), plat("A"), MetricKind::time("s"), 1.0);
        let b = Measurement::supported(app("x"), p2, plat("B"), MetricKind::time("s"), 1.0);
        let report = validate_dataset(&[a, b], &[], ValidationOptions::default());
        assert_eq!(report.len(), 1);
    }

    #[test]
    fn duplicate_specs() {
        let s = PlatformSpec::new(plat("A")).with_peak(MetricKind::rate("G"), 1.0);
        let report = validate_dataset(&[], &[s.clone(), s], ValidationOptions::default());
        assert_eq!(report.violations(), &[Violation::DuplicateSpec(plat("A"))]);
    }

    #[test]
    fn orientation_better() {
        assert!(Orientation::Rate.better(2.0, 1.0));
        assert!(Orientation::Time.better(1.0, 2.0));
        assert!(!Orientation::Time.better(1.0, 1.0));
        assert!("sideways".parse::<Orientation>().is_err());
    }
}
