//! Rendering of portability results as plain aligned tables, CSV and JSON.
//!
//! Every artifact carries a [`ReportHeader`] naming the application(s), the
//! problem and the platform set(s), since a portability value means nothing
//! without them. Tables show percentages rounded half-up to two decimals;
//! CSV and JSON carry raw fractions with full precision.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::data::Dataset;
use crate::efficiency::{
    BestObserved, CeilingSource, Efficiency, EfficiencyKind, EfficiencyRecord, UnsupportedReason,
};
use crate::error::ModelError;
use crate::metric::{Matrix, PPResult};
use crate::model::{ApplicationId, MetricKind, PlatformId, PlatformSet, ProblemId};

pub const TOOL_VERSION: &str = concat!("ppmetric ", env!("CARGO_PKG_VERSION"));

/// Rounds `fraction * 100` half-up to `decimals` places, working on the
/// shortest decimal representation of the input so that values such as
/// `0.125` are not pushed across the rounding boundary by binary noise.
pub fn percent_digits(fraction: f64, decimals: usize) -> String {
    assert!(
        fraction.is_finite() && fraction >= 0.0,
        "percentages are finite and non-negative"
    );
    let repr = fraction.to_string();
    let (int_part, frac_part) = repr.split_once('.').unwrap_or((&repr, ""));
    let mut digits: Vec<u8> = int_part
        .bytes()
        .chain(frac_part.bytes())
        .map(|b| b - b'0')
        .collect();
    // position of the decimal point after multiplying by 100
    let point = int_part.len() + 2;
    let keep = point + decimals;
    while digits.len() < keep + 1 {
        digits.push(0);
    }
    let round_up = digits[keep] >= 5;
    digits.truncate(keep);
    if round_up {
        let mut i = keep;
        loop {
            if i == 0 {
                digits.insert(0, 1);
                break;
            }
            i -= 1;
            if digits[i] == 9 {
                digits[i] = 0;
            } else {
                digits[i] += 1;
                break;
            }
        }
    }
    let point = digits.len() - decimals;
    let int: String = digits[..point]
        .iter()
        .map(|d| char::from(b'0' + d))
        .collect();
    let int = int.trim_start_matches('0');
    let int = if int.is_empty() { "0" } else { int };
    if decimals == 0 {
        return int.to_owned();
    }
    let frac: String = digits[point..]
        .iter()
        .map(|d| char::from(b'0' + d))
        .collect();
    format!("{int}.{frac}")
}

/// Two-decimal percentage with a `%` sign, e.g. `13.62%`.
pub fn percent(fraction: f64) -> String {
    format!("{}%", percent_digits(fraction, 2))
}

/// Identification stamped on every report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportHeader {
    pub applications: Vec<String>,
    pub problem: String,
    pub platform_sets: Vec<SetHeader>,
    pub kinds: Vec<EfficiencyKind>,
    pub provenance: String,
    pub tool: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SetHeader {
    pub label: String,
    pub members: Vec<String>,
}

impl ReportHeader {
    /// Fails when no platform set is given.
    pub fn new(
        applications: &[ApplicationId],
        problem: &ProblemId,
        sets: &[PlatformSet],
        kinds: &[EfficiencyKind],
        provenance: &str,
    ) -> Result<Self, ModelError> {
        if sets.is_empty() {
            return Err(ModelError::EmptyIdentifier("report platform set"));
        }
        Ok(Self {
            applications: applications.iter().map(ToString::to_string).collect(),
            problem: problem.to_string(),
            platform_sets: sets
                .iter()
                .map(|s| SetHeader {
                    label: s.label().to_owned(),
                    members: s.members().iter().map(|p| p.as_str().to_owned()).collect(),
                })
                .collect(),
            kinds: kinds.to_vec(),
            provenance: provenance.to_owned(),
            tool: TOOL_VERSION.to_owned(),
        })
    }

    fn render_text(&self, out: &mut String) {
        let label = if self.applications.len() == 1 {
            "application"
        } else {
            "applications"
        };
        let _ = writeln!(out, "{label}: {}", self.applications.join(", "));
        let _ = writeln!(out, "problem: {}", self.problem);
        for s in &self.platform_sets {
            let _ = writeln!(
                out,
                "platform set: {} = {{{}}}",
                s.label,
                s.members.join(", ")
            );
        }
        let kinds: Vec<&str> = self.kinds.iter().map(|k| k.long()).collect();
        let _ = writeln!(out, "efficiency: {}", kinds.join(", "));
        let _ = writeln!(out, "dataset: {}", self.provenance);
        let _ = writeln!(out, "tool: {}", self.tool);
    }
}

/// Plain text table: first column left-aligned, the rest right-aligned, two
/// spaces between columns, no trailing whitespace.
#[derive(Clone, Debug, Default)]
pub struct TextTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl TextTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row<S: Into<String>>(&mut self, cells: impl IntoIterator<Item = S>) {
        self.rows.push(cells.into_iter().map(Into::into).collect());
    }

    pub fn render(&self, out: &mut String) {
        let ncols = self.header.len();
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate().take(ncols) {
                widths[i] = widths[i].max(cell.chars().count());
            }
        }
        for row in std::iter::once(&self.header).chain(&self.rows) {
            let mut line = String::new();
            for (i, cell) in row.iter().enumerate().take(ncols) {
                let pad = widths[i] - cell.chars().count();
                if i == 0 {
                    line.push_str(cell);
                    line.extend(std::iter::repeat_n(' ', pad));
                } else {
                    line.push_str("  ");
                    line.extend(std::iter::repeat_n(' ', pad));
                    line.push_str(cell);
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
}

fn status(r: &EfficiencyRecord) -> &'static str {
    match r.efficiency {
        Efficiency::Value(_) if r.clamped => "clamped",
        Efficiency::Value(_) => "ok",
        Efficiency::Unsupported(UnsupportedReason::Declared) => "unsupported",
        Efficiency::Unsupported(UnsupportedReason::NoData) => "no-data",
    }
}

fn efficiency_cell(r: &EfficiencyRecord) -> String {
    match r.efficiency {
        Efficiency::Value(v) if r.clamped => format!("{} (clamped)", percent(v)),
        Efficiency::Value(v) => percent(v),
        Efficiency::Unsupported(UnsupportedReason::Declared) => "unsupported".to_owned(),
        Efficiency::Unsupported(UnsupportedReason::NoData) => "unsupported (no data)".to_owned(),
    }
}

fn kind_column(kind: EfficiencyKind, metric: &MetricKind) -> String {
    format!("{} [{}]", kind.long(), metric.units)
}

/// Output of a single-application run over one platform set, one
/// [`PPResult`] per requested efficiency kind (same set, same order).
#[derive(Clone, Debug)]
pub struct PPReport {
    pub header: ReportHeader,
    pub results: Vec<PPResult>,
}

impl PPReport {
    pub fn new(results: Vec<PPResult>, provenance: &str) -> Result<Self, ModelError> {
        let first = results
            .first()
            .ok_or(ModelError::EmptyIdentifier("report results"))?;
        let header = ReportHeader::new(
            std::slice::from_ref(&first.application),
            &first.problem,
            std::slice::from_ref(&first.platform_set),
            &results.iter().map(|r| r.kind).collect::<Vec<_>>(),
            provenance,
        )?;
        Ok(Self { header, results })
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        self.header.render_text(&mut out);
        out.push('\n');
        let mut table = TextTable::new(
            std::iter::once("platform".to_owned())
                .chain(self.results.iter().map(|r| kind_column(r.kind, &r.metric))),
        );
        let set = &self.results[0].platform_set;
        for (i, platform) in set.members().iter().enumerate() {
            table.row(
                std::iter::once(platform.as_str().to_owned()).chain(
                    self.results
                        .iter()
                        .map(|r| efficiency_cell(&r.breakdown[i])),
                ),
            );
        }
        table.row(
            std::iter::once("PP".to_owned()).chain(self.results.iter().map(|r| percent(r.value))),
        );
        table.render(&mut out);
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "application",
            "variant",
            "problem",
            "set",
            "members",
            "kind",
            "units",
            "platform",
            "status",
            "efficiency",
            "observed",
            "ceiling",
            "pp",
            "provenance",
            "tool",
        ])
        .expect("in-memory csv");
        for r in &self.results {
            let members = join_members(&r.platform_set);
            let base = |platform: &str,
                        status: &str,
                        eff: String,
                        obs: String,
                        ceil: String,
                        pp: String| {
                vec![
                    r.application.name().to_owned(),
                    r.application.variant().unwrap_or("").to_owned(),
                    r.problem.name().to_owned(),
                    r.platform_set.label().to_owned(),
                    members.clone(),
                    r.kind.short().to_owned(),
                    r.metric.units.clone(),
                    platform.to_owned(),
                    status.to_owned(),
                    eff,
                    obs,
                    ceil,
                    pp,
                    self.header.provenance.clone(),
                    self.header.tool.clone(),
                ]
            };
            for rec in &r.breakdown {
                w.write_record(base(
                    rec.platform.as_str(),
                    status(rec),
                    opt_num(rec.efficiency.value()),
                    opt_num(rec.observed),
                    opt_num(rec.ceiling),
                    String::new(),
                ))
                .expect("in-memory csv");
            }
            w.write_record(base(
                "",
                "pp",
                String::new(),
                String::new(),
                String::new(),
                r.value.to_string(),
            ))
            .expect("in-memory csv");
        }
        finish_csv(w)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Breakdown<'a> {
            platform: &'a str,
            status: &'static str,
            efficiency: Option<f64>,
            observed: Option<f64>,
            ceiling: Option<f64>,
        }
        #[derive(Serialize)]
        struct Result<'a> {
            application: String,
            set: &'a str,
            kind: EfficiencyKind,
            units: &'a str,
            orientation: &'static str,
            pp: f64,
            breakdown: Vec<Breakdown<'a>>,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            header: &'a ReportHeader,
            results: Vec<Result<'a>>,
        }
        let doc = Doc {
            header: &self.header,
            results: self
                .results
                .iter()
                .map(|r| Result {
                    application: r.application.to_string(),
                    set: r.platform_set.label(),
                    kind: r.kind,
                    units: &r.metric.units,
                    orientation: r.metric.orientation.as_str(),
                    pp: r.value,
                    breakdown: r
                        .breakdown
                        .iter()
                        .map(|b| Breakdown {
                            platform: b.platform.as_str(),
                            status: status(b),
                            efficiency: b.efficiency.value(),
                            observed: b.observed,
                            ceiling: b.ceiling,
                        })
                        .collect(),
                })
                .collect(),
        };
        crate::json::to_string_pretty(&doc)
    }
}

fn join_members(set: &PlatformSet) -> String {
    set.members()
        .iter()
        .map(PlatformId::as_str)
        .collect::<Vec<_>>()
        .join(";")
}

fn opt_num(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv output is UTF-8")
}

/// Cell status as exported: portability value, zero by unsupported member,
/// or an analyst error (`ERR`).
fn cell_status(result: &Result<PPResult, crate::error::MetricError>) -> &'static str {
    match result {
        Ok(r) if r.is_zero_by_unsupported() => "unsupported",
        Ok(_) => "ok",
        Err(_) => "ERR",
    }
}

#[derive(Clone, Debug)]
pub struct MatrixReport {
    pub header: ReportHeader,
    pub matrix: Matrix,
}

impl MatrixReport {
    pub fn new(matrix: Matrix, provenance: &str) -> Result<Self, ModelError> {
        let header = ReportHeader::new(
            &matrix.applications,
            &matrix.problem,
            &matrix.sets,
            &matrix.kinds,
            provenance,
        )?;
        Ok(Self { header, matrix })
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        self.header.render_text(&mut out);
        out.push('\n');
        let m = &self.matrix;
        let mut columns = vec!["application".to_owned()];
        for s in &m.sets {
            for k in &m.kinds {
                columns.push(format!("{}/{}", s.label(), k.short()));
            }
        }
        let mut table = TextTable::new(columns);
        let mut notes: Vec<String> = Vec::new();
        for app in &m.applications {
            let mut row = vec![app.to_string()];
            for s in &m.sets {
                for &k in &m.kinds {
                    let cell = m.cell(app, s.label(), k).expect("complete matrix");
                    row.push(match &cell.result {
                        Ok(r) => percent(r.value),
                        Err(e) => {
                            let text = e.to_string();
                            let idx = match notes.iter().position(|n| *n == text) {
                                Some(i) => i,
                                None => {
                                    notes.push(text);
                                    notes.len() - 1
                                }
                            };
                            format!("ERR[{}]", idx + 1)
                        }
                    });
                }
            }
            table.row(row);
        }
        table.render(&mut out);
        if !notes.is_empty() {
            out.push('\n');
            for (i, n) in notes.iter().enumerate() {
                let _ = writeln!(out, "[{}] {n}", i + 1);
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "application",
            "variant",
            "problem",
            "set",
            "members",
            "kind",
            "status",
            "pp",
            "error",
            "provenance",
            "tool",
        ])
        .expect("in-memory csv");
        for c in &self.matrix.cells {
            let (pp, err) = match &c.result {
                Ok(r) => (r.value.to_string(), String::new()),
                Err(e) => ("ERR".to_owned(), e.to_string()),
            };
            w.write_record([
                c.application.name(),
                c.application.variant().unwrap_or(""),
                self.matrix.problem.name(),
                c.set.label(),
                &join_members(&c.set),
                c.kind.short(),
                cell_status(&c.result),
                &pp,
                &err,
                &self.header.provenance,
                &self.header.tool,
            ])
            .expect("in-memory csv");
        }
        finish_csv(w)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct JsonCell<'a> {
            application: String,
            set: &'a str,
            kind: EfficiencyKind,
            status: &'static str,
            pp: Option<f64>,
            error: Option<String>,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            header: &'a ReportHeader,
            cells: Vec<JsonCell<'a>>,
        }
        let doc = Doc {
            header: &self.header,
            cells: self
                .matrix
                .cells
                .iter()
                .map(|c| JsonCell {
                    application: c.application.to_string(),
                    set: c.set.label(),
                    kind: c.kind,
                    status: cell_status(&c.result),
                    pp: c.result.as_ref().ok().map(|r| r.value),
                    error: c.result.as_ref().err().map(ToString::to_string),
                })
                .collect(),
        };
        crate::json::to_string_pretty(&doc)
    }

    /// Long-form rows `application,variant,problem,set,kind,platform,efficiency,pp`
    /// sorted by (application, set, kind, platform). Each cell contributes one
    /// row per member plus an aggregate row with an empty platform; error
    /// cells contribute a single `ERR` row.
    pub fn to_plotdata(&self) -> String {
        type Key = (ApplicationId, String, &'static str, String);
        let mut rows: BTreeMap<Key, (String, String)> = BTreeMap::new();
        for c in &self.matrix.cells {
            let key = |platform: &str| {
                (
                    c.application.clone(),
                    c.set.label().to_owned(),
                    c.kind.short(),
                    platform.to_owned(),
                )
            };
            match &c.result {
                Ok(r) => {
                    for b in &r.breakdown {
                        let eff = match b.efficiency {
                            Efficiency::Value(v) => v.to_string(),
                            Efficiency::Unsupported(UnsupportedReason::Declared) => {
                                "unsupported".to_owned()
                            }
                            Efficiency::Unsupported(UnsupportedReason::NoData) => {
                                "no-data".to_owned()
                            }
                        };
                        rows.insert(key(b.platform.as_str()), (eff, String::new()));
                    }
                    rows.insert(key(""), (String::new(), r.value.to_string()));
                }
                Err(_) => {
                    rows.insert(key(""), (String::new(), "ERR".to_owned()));
                }
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "application",
            "variant",
            "problem",
            "set",
            "kind",
            "platform",
            "efficiency",
            "pp",
        ])
        .expect("in-memory csv");
        for ((app, set, kind, platform), (eff, pp)) in rows {
            w.write_record([
                app.name(),
                app.variant().unwrap_or(""),
                self.matrix.problem.name(),
                &set,
                kind,
                &platform,
                &eff,
                &pp,
            ])
            .expect("in-memory csv");
        }
        finish_csv(w)
    }
}

/// One line of the best-observed listing.
#[derive(Clone, Debug, PartialEq)]
pub struct BestRow {
    pub platform: PlatformId,
    pub metric: MetricKind,
    /// Ceiling used for application efficiency, if any.
    pub ceiling: Option<BestObserved>,
    /// Best supported measurement in the dataset, if any.
    pub derived: Option<BestObserved>,
}

impl BestRow {
    pub fn external_only(&self) -> bool {
        self.derived.is_none() && self.ceiling.as_ref().is_some_and(BestObserved::is_external)
    }
}

/// Best-observed ceilings for every (platform, metric) of a problem,
/// optionally restricted to one platform; ordered by metric then platform.
pub fn best_rows(
    dataset: &Dataset,
    problem: &ProblemId,
    platform: Option<&PlatformId>,
) -> Vec<BestRow> {
    let mut metrics = dataset.metrics(problem);
    for b in dataset.externals() {
        if b.problem.name() == problem.name() && !metrics.contains(&b.metric) {
            metrics.push(b.metric.clone());
        }
    }
    metrics.sort();
    let platforms: Vec<PlatformId> = match platform {
        Some(p) => vec![p.clone()],
        None => dataset.platforms(problem),
    };
    let mut rows = Vec::new();
    for metric in &metrics {
        for p in &platforms {
            let derived =
                crate::efficiency::derive_best_observed(dataset.measurements(), problem, p, metric)
                    .ok();
            let ceiling = dataset.ceiling(problem, p, metric).ok();
            if ceiling.is_none() && derived.is_none() && platform.is_none() {
                let any = dataset
                    .measurements()
                    .iter()
                    .any(|m| &m.problem == problem && &m.platform == p && &m.metric == metric);
                if !any {
                    continue;
                }
            }
            rows.push(BestRow {
                platform: p.clone(),
                metric: metric.clone(),
                ceiling,
                derived,
            });
        }
    }
    rows
}

pub fn best_table(
    rows: &[BestRow],
    applications: &[ApplicationId],
    problem: &ProblemId,
    provenance: &str,
) -> Result<String, ModelError> {
    let mut platforms: Vec<PlatformId> = rows.iter().map(|r| r.platform.clone()).collect();
    platforms.sort();
    platforms.dedup();
    let set = PlatformSet::new("listed", platforms)?;
    let header = ReportHeader::new(
        applications,
        problem,
        &[set],
        &[EfficiencyKind::Application],
        provenance,
    )?;
    let mut out = String::new();
    header.render_text(&mut out);
    out.push('\n');
    let mut table = TextTable::new(["platform", "metric", "best", "source", "derived", "note"]);
    for r in rows {
        let (best, source) = match &r.ceiling {
            Some(b) => (
                b.value.to_string(),
                match &b.source {
                    CeilingSource::Derived(app) => app.to_string(),
                    CeilingSource::External { .. } => "external".to_owned(),
                },
            ),
            None => ("-".to_owned(), "none".to_owned()),
        };
        let derived = r
            .derived
            .as_ref()
            .map_or("-".to_owned(), |b| b.value.to_string());
        let note = if r.external_only() {
            "external only".to_owned()
        } else if r.ceiling.is_none() {
            "no supported measurement".to_owned()
        } else {
            match &r.ceiling.as_ref().expect("checked").source {
                CeilingSource::External { note } => note.clone(),
                CeilingSource::Derived(_) => String::new(),
            }
        };
        table.row([
            r.platform.as_str().to_owned(),
            r.metric.to_string(),
            best,
            source,
            derived,
            note,
        ]);
    }
    table.render(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percent_half_up() {
        assert_eq!(percent(0.16), "16.00%");
        assert_eq!(percent(1.0), "100.00%");
        assert_eq!(percent(0.0), "0.00%");
        assert_eq!(percent(4.0 / 29.375), "13.62%");
        assert_eq!(percent(4.0 / 9.25), "43.24%");
        assert_eq!(percent(3.0 / 4.25), "70.59%");
        assert_eq!(percent(2.0 / 3.0), "66.67%");
        assert_eq!(percent(0.00125), "0.13%");
        assert_eq!(percent(0.001249), "0.12%");
        assert_eq!(percent(0.999995), "100.00%");
        assert_eq!(percent(0.99994), "99.99%");
        assert_eq!(percent(1e-9), "0.00%");
        assert_eq!(percent_digits(160.0 / 700.0, 0), "23");
        assert_eq!(percent_digits(0.08, 0), "8");
        assert_eq!(percent_digits(0.005, 0), "1");
    }

    #[test]
    fn table_alignment() {
        let mut t = TextTable::new(["a", "value"]);
        t.row(["long name", "1"]);
        t.row(["x", "12345678"]);
        let mut out = String::new();
        t.render(&mut out);
        assert_eq!(
            out,
            "a             value\nlong name         1\nx          12345678\n"
        );
    }

    #[test]
    fn header_requires_set() {
        let p = ProblemId::new("p").unwrap();
        assert!(ReportHeader::new(&[], &p, &[], &[], "").is_err());
    }
}
