//! Ingestion and persistence: measurement, spec and external-ceiling files
//! in CSV or JSON, repeated-run reduction, whole-dataset save/load and the
//! bundled corpora.
//!
//! Measurement CSV layout (headered, fixed order):
//!
//! ```text
//! application,variant,problem,platform,orientation,units,value,supported
//! ```
//!
//! Spec CSV: `platform,orientation,units,peak`.
//! External-ceiling CSV: `problem,platform,orientation,units,value,source_note`.
//! JSON inputs are arrays of records with the same field names.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize};

use crate::efficiency::{derive_best_observed, BestObserved, CeilingSource, EfficiencyKind};
use crate::error::{DataError, EfficiencyError, MetricError, ModelError};
use crate::model::{
    validate_dataset, ApplicationId, Measurement, MeasurementKey, MetricKind, Orientation, Outcome,
    PlatformId, PlatformSet, PlatformSpec, ProblemId, ValidationOptions, ValidationReport,
    Violation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// `.json` means JSON; anything else is read as CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Self::Json,
            _ => Self::Csv,
        }
    }
}

/// How repeated runs of one measurement tuple are combined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Reduce {
    /// Best run: max for rates, min for times.
    #[default]
    Best,
    Mean,
}

/// Accepts a JSON number or a numeric string.
fn de_opt_f64<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Num {
        F(f64),
        S(String),
    }
    match Option::<Num>::deserialize(d)? {
        None => Ok(None),
        Some(Num::F(v)) => Ok(Some(v)),
        Some(Num::S(s)) if s.trim().is_empty() => Ok(None),
        Some(Num::S(s)) => s.trim().parse().map(Some).map_err(serde::de::Error::custom),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct MeasurementRecord {
    application: String,
    #[serde(default)]
    variant: Option<String>,
    problem: String,
    platform: String,
    orientation: String,
    units: String,
    #[serde(default, deserialize_with = "de_opt_f64")]
    value: Option<f64>,
    #[serde(deserialize_with = "de_bool")]
    supported: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    parameters: BTreeMap<String, String>,
}

fn de_bool<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum B {
        B(bool),
        S(String),
    }
    match B::deserialize(d)? {
        B::B(b) => Ok(b),
        B::S(s) => match s.trim() {
            "true" => Ok(true),
            "false" => Ok(false),
            other => Err(serde::de::Error::custom(format!(
                "supported must be `true` or `false`, got `{other}`"
            ))),
        },
    }
}

impl MeasurementRecord {
    fn into_measurement(self) -> Result<Measurement, String> {
        let application =
            ApplicationId::new(self.application, self.variant).map_err(|e| e.to_string())?;
        let problem =
            ProblemId::with_parameters(self.problem, self.parameters).map_err(|e| e.to_string())?;
        let platform = PlatformId::new(self.platform).map_err(|e| e.to_string())?;
        let orientation: Orientation = self
            .orientation
            .parse()
            .map_err(|e: ModelError| e.to_string())?;
        let metric = MetricKind::new(orientation, self.units);
        if !self.supported {
            return Ok(Measurement::unsupported(
                application,
                problem,
                platform,
                metric,
            ));
        }
        match self.value {
            Some(v) if v.is_finite() && v > 0.0 => Ok(Measurement::supported(
                application,
                problem,
                platform,
                metric,
                v,
            )),
            Some(v) => Err(format!("value {v} must be positive and finite")),
            None => Err("supported row has no value".to_owned()),
        }
    }

    fn from_measurement(m: &Measurement) -> Self {
        Self {
            application: m.application.name().to_owned(),
            variant: m.application.variant().map(str::to_owned),
            problem: m.problem.name().to_owned(),
            platform: m.platform.as_str().to_owned(),
            orientation: m.metric.orientation.as_str().to_owned(),
            units: m.metric.units.clone(),
            value: m.value(),
            supported: m.is_supported(),
            parameters: m.problem.parameters().clone(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct SpecRecord {
    platform: String,
    orientation: String,
    units: String,
    #[serde(deserialize_with = "de_req_f64")]
    peak: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct ExternalRecord {
    problem: String,
    platform: String,
    orientation: String,
    units: String,
    #[serde(deserialize_with = "de_req_f64")]
    value: f64,
    #[serde(default)]
    source_note: String,
}

fn de_req_f64<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    de_opt_f64(d)?.ok_or_else(|| serde::de::Error::custom("missing number"))
}

/// Decodes records, tagging each with a human-readable location.
fn read_records<T, R>(reader: R, format: Format) -> Result<Vec<(String, T)>, DataError>
where
    T: for<'de> Deserialize<'de>,
    R: Read,
{
    match format {
        Format::Csv => {
            let mut rdr = csv::ReaderBuilder::new()
                .trim(csv::Trim::All)
                .from_reader(reader);
            let headers = rdr.headers()?.clone();
            let mut out = Vec::new();
            for row in rdr.records() {
                let row = row?;
                let line = row.position().map_or(0, |p| p.line());
                let location = format!("line {line}");
                let rec: T = row
                    .deserialize(Some(&headers))
                    .map_err(|e| DataError::Malformed {
                        location: location.clone(),
                        message: csv_message(&e),
                    })?;
                out.push((location, rec));
            }
            Ok(out)
        }
        Format::Json => {
            let values: Vec<serde_json::Value> = serde_json::from_reader(reader)?;
            values
                .into_iter()
                .enumerate()
                .map(|(i, v)| {
                    let location = format!("record {}", i + 1);
                    serde_json::from_value(v)
                        .map(|r| (location.clone(), r))
                        .map_err(|e| DataError::Malformed {
                            location,
                            message: e.to_string(),
                        })
                })
                .collect()
        }
    }
}

fn csv_message(e: &csv::Error) -> String {
    match e.kind() {
        csv::ErrorKind::Deserialize { err, .. } => match err.field() {
            Some(i) => format!("field {}: {}", i + 1, err.kind()),
            None => err.kind().to_string(),
        },
        _ => e.to_string(),
    }
}

/// Reads measurements and reduces repeated runs of each
/// (application, problem, platform, metric) tuple. Output is sorted by
/// tuple, so row order never affects the result.
pub fn load_measurements<R: Read>(
    reader: R,
    format: Format,
    reduce: Reduce,
) -> Result<Vec<Measurement>, DataError> {
    let mut groups: BTreeMap<MeasurementKey, Vec<Measurement>> = BTreeMap::new();
    for (location, rec) in read_records::<MeasurementRecord, _>(reader, format)? {
        let m = rec
            .into_measurement()
            .map_err(|message| DataError::Malformed { location, message })?;
        groups.entry(m.key()).or_default().push(m);
    }
    groups
        .into_iter()
        .map(|(key, runs)| reduce_runs(key, runs, reduce))
        .collect()
}

fn reduce_runs(
    key: MeasurementKey,
    mut runs: Vec<Measurement>,
    reduce: Reduce,
) -> Result<Measurement, DataError> {
    if runs.len() == 1 {
        return Ok(runs.pop().expect("one run"));
    }
    let supported = runs.iter().filter(|m| m.is_supported()).count();
    if supported == 0 {
        return Ok(runs.swap_remove(0));
    }
    if supported != runs.len() {
        // mixed pass/fail runs cannot be folded into one tuple
        return Err(DataError::DuplicateTuple(format!(
            "{key} has both supported and unsupported runs"
        )));
    }
    let mut values: Vec<f64> = runs.iter().filter_map(Measurement::value).collect();
    values.sort_by(f64::total_cmp);
    let value = match reduce {
        Reduce::Best => match key.metric.orientation {
            Orientation::Rate => *values.last().expect("non-empty"),
            Orientation::Time => values[0],
        },
        Reduce::Mean => values.iter().sum::<f64>() / values.len() as f64,
    };
    let mut m = runs.swap_remove(0);
    m.outcome = Outcome::Supported(value);
    Ok(m)
}

/// Reads platform peaks. Rows for the same platform are merged into one
/// spec; a repeated (platform, metric) row starts a second spec for that
/// platform, which validation then reports as a duplicate.
pub fn load_specs<R: Read>(reader: R, format: Format) -> Result<Vec<PlatformSpec>, DataError> {
    let mut specs: Vec<PlatformSpec> = Vec::new();
    let mut latest: HashMap<PlatformId, usize> = HashMap::new();
    for (location, rec) in read_records::<SpecRecord, _>(reader, format)? {
        let malformed = |message: String| DataError::Malformed {
            location: location.clone(),
            message,
        };
        let platform = PlatformId::new(rec.platform).map_err(|e| malformed(e.to_string()))?;
        let orientation: Orientation = rec
            .orientation
            .parse()
            .map_err(|e: ModelError| malformed(e.to_string()))?;
        if orientation != Orientation::Rate {
            return Err(malformed(format!(
                "peak for {platform} is time-oriented; platform peaks must be rate-oriented"
            )));
        }
        if !(rec.peak.is_finite() && rec.peak > 0.0) {
            return Err(malformed(format!(
                "peak {} for {platform} must be positive and finite",
                rec.peak
            )));
        }
        let metric = MetricKind::new(orientation, rec.units);
        match latest.get(&platform) {
            Some(&i) if !specs[i].peaks.contains_key(&metric) => {
                specs[i].peaks.insert(metric, rec.peak);
            }
            _ => {
                latest.insert(platform.clone(), specs.len());
                specs.push(PlatformSpec::new(platform).with_peak(metric, rec.peak));
            }
        }
    }
    specs.sort_by(|a, b| a.platform.cmp(&b.platform));
    Ok(specs)
}

/// Reads user-supplied ceilings (performance models, prior studies).
pub fn load_externals<R: Read>(reader: R, format: Format) -> Result<Vec<BestObserved>, DataError> {
    let mut out = Vec::new();
    for (location, rec) in read_records::<ExternalRecord, _>(reader, format)? {
        let malformed = |message: String| DataError::Malformed {
            location: location.clone(),
            message,
        };
        let problem = ProblemId::new(rec.problem).map_err(|e| malformed(e.to_string()))?;
        let platform = PlatformId::new(rec.platform).map_err(|e| malformed(e.to_string()))?;
        let orientation: Orientation = rec
            .orientation
            .parse()
            .map_err(|e: ModelError| malformed(e.to_string()))?;
        if !(rec.value.is_finite() && rec.value > 0.0) {
            return Err(malformed(format!(
                "ceiling {} must be positive and finite",
                rec.value
            )));
        }
        out.push(BestObserved::external(
            problem,
            platform,
            MetricKind::new(orientation, rec.units),
            rec.value,
            rec.source_note,
        ));
    }
    Ok(out)
}

fn open(path: &Path) -> Result<fs::File, DataError> {
    fs::File::open(path).map_err(|source| DataError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_measurements_file(path: &Path, reduce: Reduce) -> Result<Vec<Measurement>, DataError> {
    load_measurements(open(path)?, Format::from_path(path), reduce)
}

pub fn load_specs_file(path: &Path) -> Result<Vec<PlatformSpec>, DataError> {
    load_specs(open(path)?, Format::from_path(path))
}

pub fn load_externals_file(path: &Path) -> Result<Vec<BestObserved>, DataError> {
    load_externals(open(path)?, Format::from_path(path))
}

fn external_key(b: &BestObserved) -> (String, PlatformId, MetricKind) {
    (
        b.problem.name().to_owned(),
        b.platform.clone(),
        b.metric.clone(),
    )
}

fn validate_externals(externals: &[BestObserved]) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for b in externals {
        let (problem, platform, metric) = external_key(b);
        if !(b.value.is_finite() && b.value > 0.0) {
            violations.push(Violation::InvalidExternal {
                problem: problem.clone(),
                platform: platform.clone(),
                value: b.value.to_string(),
            });
        }
        if !seen.insert((problem.clone(), platform.clone(), metric.clone())) {
            violations.push(Violation::DuplicateExternal {
                problem,
                platform,
                metric,
            });
        }
    }
    ValidationReport::from_violations(violations)
}

/// Full structural check of dataset parts, including external ceilings.
pub fn validate_parts(
    measurements: &[Measurement],
    specs: &[PlatformSpec],
    externals: &[BestObserved],
    options: ValidationOptions,
) -> ValidationReport {
    validate_dataset(measurements, specs, options).merge(validate_externals(externals))
}

/// A validated, immutable collection of measurements, peaks and external
/// ceilings, with a free-form provenance note.
#[derive(Clone, Debug)]
pub struct Dataset {
    measurements: Vec<Measurement>,
    specs: Vec<PlatformSpec>,
    externals: Vec<BestObserved>,
    provenance: String,
    index: HashMap<MeasurementKey, usize>,
}

impl PartialEq for Dataset {
    fn eq(&self, other: &Self) -> bool {
        self.measurements == other.measurements
            && self.specs == other.specs
            && self.externals == other.externals
            && self.provenance == other.provenance
    }
}

impl Dataset {
    /// Builds a dataset, failing with the full validation report if the
    /// parts are inconsistent. Parts are stored in canonical (sorted) order.
    pub fn new(
        mut measurements: Vec<Measurement>,
        mut specs: Vec<PlatformSpec>,
        mut externals: Vec<BestObserved>,
        provenance: impl Into<String>,
    ) -> Result<Self, DataError> {
        let report = validate_parts(
            &measurements,
            &specs,
            &externals,
            ValidationOptions::default(),
        );
        if !report.is_empty() {
            return Err(DataError::Invalid(report));
        }
        measurements.sort_by_cached_key(Measurement::key);
        specs.sort_by(|a, b| a.platform.cmp(&b.platform));
        externals.sort_by_cached_key(external_key);
        let index = measurements
            .iter()
            .enumerate()
            .map(|(i, m)| (m.key(), i))
            .collect();
        Ok(Self {
            measurements,
            specs,
            externals,
            provenance: provenance.into(),
            index,
        })
    }

    pub fn measurements(&self) -> &[Measurement] {
        &self.measurements
    }

    pub fn specs(&self) -> &[PlatformSpec] {
        &self.specs
    }

    pub fn externals(&self) -> &[BestObserved] {
        &self.externals
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn measurement(
        &self,
        application: &ApplicationId,
        problem: &ProblemId,
        platform: &PlatformId,
        metric: &MetricKind,
    ) -> Option<&Measurement> {
        let key = MeasurementKey {
            application: application.clone(),
            problem: problem.clone(),
            platform: platform.clone(),
            metric: metric.clone(),
        };
        self.index.get(&key).map(|&i| &self.measurements[i])
    }

    pub fn spec(&self, platform: &PlatformId) -> Option<&PlatformSpec> {
        self.specs.iter().find(|s| &s.platform == platform)
    }

    pub fn external(
        &self,
        problem: &ProblemId,
        platform: &PlatformId,
        metric: &MetricKind,
    ) -> Option<&BestObserved> {
        self.externals.iter().find(|b| {
            b.problem.name() == problem.name() && &b.platform == platform && &b.metric == metric
        })
    }

    /// The problem with this name, as recorded in the measurements or, failing
    /// that, in the external ceilings.
    pub fn problem(&self, name: &str) -> Option<ProblemId> {
        self.measurements
            .iter()
            .map(|m| &m.problem)
            .chain(self.externals.iter().map(|b| &b.problem))
            .find(|p| p.name() == name)
            .cloned()
    }

    /// Sorted, distinct applications measured on the problem.
    pub fn applications(&self, problem: &ProblemId) -> Vec<ApplicationId> {
        let mut apps: Vec<_> = self
            .measurements
            .iter()
            .filter(|m| &m.problem == problem)
            .map(|m| m.application.clone())
            .collect();
        apps.sort();
        apps.dedup();
        apps
    }

    /// Sorted, distinct platforms that appear for the problem.
    pub fn platforms(&self, problem: &ProblemId) -> Vec<PlatformId> {
        let mut platforms: Vec<_> = self
            .measurements
            .iter()
            .filter(|m| &m.problem == problem)
            .map(|m| m.platform.clone())
            .chain(
                self.externals
                    .iter()
                    .filter(|b| b.problem.name() == problem.name())
                    .map(|b| b.platform.clone()),
            )
            .collect();
        platforms.sort();
        platforms.dedup();
        platforms
    }

    /// Sorted, distinct metrics used by the problem's measurements.
    pub fn metrics(&self, problem: &ProblemId) -> Vec<MetricKind> {
        let mut metrics: Vec<_> = self
            .measurements
            .iter()
            .filter(|m| &m.problem == problem)
            .map(|m| m.metric.clone())
            .collect();
        metrics.sort();
        metrics.dedup();
        metrics
    }

    /// Picks the metric an efficiency kind is computed from.
    ///
    /// With `units` given, the problem's metric with that label. Otherwise
    /// architectural efficiency uses the rate metric, and application
    /// efficiency prefers the time metric (time-to-solution) and falls back
    /// to the rate metric.
    pub fn resolve_metric(
        &self,
        problem: &ProblemId,
        kind: EfficiencyKind,
        units: Option<&str>,
    ) -> Result<MetricKind, MetricError> {
        let metrics = self.metrics(problem);
        if metrics.is_empty() {
            return Err(MetricError::UnknownProblem(problem.name().to_owned()));
        }
        let find = |o: Orientation| metrics.iter().find(|m| m.orientation == o).cloned();
        let chosen = match (units, kind) {
            (Some(u), _) => metrics
                .iter()
                .find(|m| m.units == u)
                .cloned()
                .ok_or_else(|| MetricError::NoMetric {
                    problem: problem.name().to_owned(),
                    wanted: format!("`{u}`"),
                })?,
            (None, EfficiencyKind::Architectural) => {
                find(Orientation::Rate).ok_or_else(|| MetricError::NoMetric {
                    problem: problem.name().to_owned(),
                    wanted: "rate-oriented".to_owned(),
                })?
            }
            (None, EfficiencyKind::Application) => find(Orientation::Time)
                .or_else(|| find(Orientation::Rate))
                .expect("non-empty"),
        };
        if kind == EfficiencyKind::Architectural && chosen.orientation == Orientation::Time {
            return Err(EfficiencyError::TimeOrientedArchitectural(chosen).into());
        }
        Ok(chosen)
    }

    /// Ceiling for application efficiency: the external ceiling when one is
    /// supplied, otherwise the best supported measurement in the dataset.
    pub fn ceiling(
        &self,
        problem: &ProblemId,
        platform: &PlatformId,
        metric: &MetricKind,
    ) -> Result<BestObserved, EfficiencyError> {
        if let Some(b) = self.external(problem, platform, metric) {
            return Ok(b.clone());
        }
        derive_best_observed(&self.measurements, problem, platform, metric)
    }
}

#[derive(Serialize, Deserialize)]
struct DatasetFile {
    provenance: String,
    measurements: Vec<MeasurementRecord>,
    specs: Vec<SpecRecord>,
    externals: Vec<ExternalRecord>,
}

impl Dataset {
    pub fn to_json(&self) -> String {
        let file = DatasetFile {
            provenance: self.provenance.clone(),
            measurements: self
                .measurements
                .iter()
                .map(MeasurementRecord::from_measurement)
                .collect(),
            specs: self
                .specs
                .iter()
                .flat_map(|s| {
                    s.peaks.iter().map(|(metric, &peak)| SpecRecord {
                        platform: s.platform.as_str().to_owned(),
                        orientation: metric.orientation.as_str().to_owned(),
                        units: metric.units.clone(),
                        peak,
                    })
                })
                .collect(),
            externals: self
                .externals
                .iter()
                .map(|b| ExternalRecord {
                    problem: b.problem.name().to_owned(),
                    platform: b.platform.as_str().to_owned(),
                    orientation: b.metric.orientation.as_str().to_owned(),
                    units: b.metric.units.clone(),
                    value: b.value,
                    source_note: match &b.source {
                        CeilingSource::External { note } => note.clone(),
                        CeilingSource::Derived(a) => a.to_string(),
                    },
                })
                .collect(),
        };
        crate::json::to_string_pretty(&file)
    }

    pub fn from_json(text: &str) -> Result<Self, DataError> {
        let file: DatasetFile = serde_json::from_str(text)?;
        let measurements = file
            .measurements
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                r.into_measurement()
                    .map_err(|message| DataError::Malformed {
                        location: format!("measurement {}", i + 1),
                        message,
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let specs_json = serde_json::to_vec(&file.specs)?;
        let specs = load_specs(specs_json.as_slice(), Format::Json)?;
        let externals_json = serde_json::to_vec(&file.externals)?;
        let externals = load_externals(externals_json.as_slice(), Format::Json)?;
        // problem parameters live on measurements; carry them over to the
        // matching external ceilings
        let externals = externals
            .into_iter()
            .map(|mut b| {
                if let Some(p) = measurements
                    .iter()
                    .find(|m| m.problem.name() == b.problem.name())
                {
                    b.problem = p.problem.clone();
                }
                b
            })
            .collect();
        Self::new(measurements, specs, externals, file.provenance)
    }
}

pub fn save_dataset(ds: &Dataset, path: &Path) -> Result<(), DataError> {
    fs::write(path, ds.to_json()).map_err(|source| DataError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_dataset(path: &Path) -> Result<Dataset, DataError> {
    let text = fs::read_to_string(path).map_err(|source| DataError::Io {
        path: path.to_owned(),
        source,
    })?;
    Dataset::from_json(&text)
}

/// Parses a platform-set file: one `label:p1,p2,...` per line; blank lines
/// and `#` comments are skipped. Labels must be unique.
pub fn parse_sets(text: &str) -> Result<Vec<PlatformSet>, DataError> {
    let mut sets: Vec<PlatformSet> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: String| DataError::BadSet {
            line: i + 1,
            message,
        };
        if !line.contains(':') {
            return Err(bad("expected `label:p1,p2,...`".to_owned()));
        }
        let set = PlatformSet::parse(line).map_err(|e| bad(e.to_string()))?;
        if sets.iter().any(|s| s.label() == set.label()) {
            return Err(bad(format!("duplicate set label `{}`", set.label())));
        }
        sets.push(set);
    }
    Ok(sets)
}

/// A dataset shipped with the library, with its natural problem and
/// platform sets.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub name: &'static str,
    pub dataset: Dataset,
    pub problem: ProblemId,
    pub sets: Vec<PlatformSet>,
}

pub const CORPORA: [&str; 2] = ["tableI", "gpustream-shape"];

mod bundled {
    pub const TABLE_I_MEASUREMENTS: &str = include_str!("../data/tableI/measurements.csv");
    pub const TABLE_I_SPECS: &str = include_str!("../data/tableI/specs.csv");
    pub const TABLE_I_EXTERNALS: &str = include_str!("../data/tableI/externals.csv");
    pub const TABLE_I_SETS: &str = include_str!("../data/tableI/sets.txt");
    pub const GPUSTREAM_MEASUREMENTS: &str =
        include_str!("../data/gpustream-shape/measurements.csv");
    pub const GPUSTREAM_SPECS: &str = include_str!("../data/gpustream-shape/specs.csv");
    pub const GPUSTREAM_SETS: &str = include_str!("../data/gpustream-shape/sets.txt");
}

/// Raw files of a bundled corpus: (measurements CSV, specs CSV, externals
/// CSV, sets file).
pub fn corpus_files(
    name: &str,
) -> Result<(&'static str, &'static str, &'static str, &'static str), DataError> {
    use bundled::*;
    match name {
        "tableI" => Ok((
            TABLE_I_MEASUREMENTS,
            TABLE_I_SPECS,
            TABLE_I_EXTERNALS,
            TABLE_I_SETS,
        )),
        "gpustream-shape" => Ok((
            GPUSTREAM_MEASUREMENTS,
            GPUSTREAM_SPECS,
            "problem,platform,orientation,units,value,source_note\n",
            GPUSTREAM_SETS,
        )),
        other => Err(DataError::UnknownCorpus(other.to_owned())),
    }
}

pub fn corpus(name: &str) -> Result<Corpus, DataError> {
    let (measurements, specs, externals, sets) = corpus_files(name)?;
    let (name, provenance) = match name {
        "tableI" => (
            "tableI",
            "bundled corpus tableI: constructed five-platform example (one application, GFLOP/s and time-to-solution)",
        ),
        _ => (
            "gpustream-shape",
            "bundled corpus gpustream-shape: SYNTHETIC values (8 implementations x 9 platforms), structure only, not measured data",
        ),
    };
    let measurements = load_measurements(measurements.as_bytes(), Format::Csv, Reduce::Best)?;
    let specs = load_specs(specs.as_bytes(), Format::Csv)?;
    let externals = load_externals(externals.as_bytes(), Format::Csv)?;
    let dataset = Dataset::new(measurements, specs, externals, provenance)?;
    let problem = dataset.measurements()[0].problem.clone();
    let sets = parse_sets(sets)?;
    Ok(Corpus {
        name,
        dataset,
        problem,
        sets,
    })
}
