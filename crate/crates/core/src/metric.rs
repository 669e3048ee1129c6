//! The performance-portability metric: the harmonic mean of per-platform
//! efficiencies over a platform set, defined as zero as soon as any member
//! is unsupported.

use crate::data::Dataset;
use crate::efficiency::{
    application_efficiency, architectural_efficiency, ClampPolicy, Efficiency, EfficiencyKind,
    EfficiencyRecord, UnsupportedReason,
};
use crate::error::MetricError;
use crate::model::{ApplicationId, MetricKind, PlatformId, PlatformSet, ProblemId};

/// Neumaier-compensated sum; keeps the reciprocal sum within an ulp or so
/// of exact regardless of set size or order.
fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `n / Σ 1/x_i` over strictly positive values. Returns `None` for an empty
/// slice.
pub fn harmonic_mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let denom = compensated_sum(values.iter().map(|v| v.recip()));
    Some(values.len() as f64 / denom)
}

/// Performance portability of one application over the platforms whose
/// efficiencies are given (one record per set member).
///
/// Zero if any record is unsupported; otherwise the harmonic mean of the
/// efficiency values. An empty list is an error.
pub fn pp(efficiencies: &[EfficiencyRecord]) -> Result<f64, MetricError> {
    if efficiencies.is_empty() {
        return Err(MetricError::EmptySet);
    }
    let mut values = Vec::with_capacity(efficiencies.len());
    for r in efficiencies {
        match r.efficiency {
            Efficiency::Value(v) if v > 0.0 => values.push(v),
            _ => return Ok(0.0),
        }
    }
    Ok(harmonic_mean(&values).expect("non-empty"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PPResult {
    pub application: ApplicationId,
    pub problem: ProblemId,
    pub platform_set: PlatformSet,
    pub kind: EfficiencyKind,
    pub metric: MetricKind,
    pub value: f64,
    /// One record per set member, in set order.
    pub breakdown: Vec<EfficiencyRecord>,
}

impl PPResult {
    pub fn is_zero_by_unsupported(&self) -> bool {
        self.breakdown.iter().any(|r| !r.efficiency.is_supported())
    }

    pub fn clamped_platforms(&self) -> impl Iterator<Item = &PlatformId> {
        self.breakdown
            .iter()
            .filter(|r| r.clamped)
            .map(|r| &r.platform)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub clamp: ClampPolicy,
    /// Unit label selecting the metric; `None` picks the default for the
    /// efficiency kind (see [`Dataset::resolve_metric`]).
    pub units: Option<String>,
}

/// Resolves each set member against the dataset, computes the requested
/// efficiency and aggregates.
///
/// A member without any measurement counts as unsupported. A supported
/// member without a peak (architectural kind) is an analyst error and is
/// reported as [`MetricError::MissingPeaks`] listing every such member.
pub fn pp_for(
    application: &ApplicationId,
    problem: &ProblemId,
    set: &PlatformSet,
    kind: EfficiencyKind,
    dataset: &Dataset,
    options: &AnalysisOptions,
) -> Result<PPResult, MetricError> {
    let metric = dataset.resolve_metric(problem, kind, options.units.as_deref())?;
    let mut breakdown = Vec::with_capacity(set.len());
    let mut missing = Vec::new();

    for platform in set.members() {
        let Some(m) = dataset.measurement(application, problem, platform, &metric) else {
            breakdown.push(EfficiencyRecord::unsupported(
                platform.clone(),
                kind,
                UnsupportedReason::NoData,
            ));
            continue;
        };
        if !m.is_supported() {
            breakdown.push(EfficiencyRecord::unsupported(
                platform.clone(),
                kind,
                UnsupportedReason::Declared,
            ));
            continue;
        }
        let record = match kind {
            EfficiencyKind::Architectural => {
                match dataset.spec(platform).filter(|s| s.peak(&metric).is_some()) {
                    Some(spec) => architectural_efficiency(m, spec, options.clamp)?,
                    None => {
                        missing.push(platform.clone());
                        continue;
                    }
                }
            }
            EfficiencyKind::Application => {
                let best = dataset.ceiling(problem, platform, &metric)?;
                application_efficiency(m, &best, options.clamp)?
            }
        };
        breakdown.push(record);
    }

    if !missing.is_empty() {
        return Err(MetricError::MissingPeaks {
            metric,
            platforms: missing,
        });
    }
    let value = pp(&breakdown)?;
    Ok(PPResult {
        application: application.clone(),
        problem: problem.clone(),
        platform_set: set.clone(),
        kind,
        metric,
        value,
        breakdown,
    })
}

/// One (application, set, kind) entry of a subset analysis. Errors stay in
/// the cell so one bad cell does not hide the rest.
#[derive(Clone, Debug)]
pub struct Cell {
    pub application: ApplicationId,
    pub set: PlatformSet,
    pub kind: EfficiencyKind,
    pub result: Result<PPResult, MetricError>,
}

/// Cells ordered application-major, then set, then kind, following the
/// input order of each list.
#[derive(Clone, Debug)]
pub struct Matrix {
    pub problem: ProblemId,
    pub applications: Vec<ApplicationId>,
    pub sets: Vec<PlatformSet>,
    pub kinds: Vec<EfficiencyKind>,
    pub cells: Vec<Cell>,
}

impl Matrix {
    pub fn cell(
        &self,
        application: &ApplicationId,
        set_label: &str,
        kind: EfficiencyKind,
    ) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| &c.application == application && c.set.label() == set_label && c.kind == kind)
    }
}

pub fn subset_analysis(
    applications: &[ApplicationId],
    problem: &ProblemId,
    sets: &[PlatformSet],
    kinds: &[EfficiencyKind],
    dataset: &Dataset,
    options: &AnalysisOptions,
) -> Matrix {
    let mut cells = Vec::with_capacity(applications.len() * sets.len() * kinds.len());
    for application in applications {
        for set in sets {
            for &kind in kinds {
                cells.push(Cell {
                    application: application.clone(),
                    set: set.clone(),
                    kind,
                    result: pp_for(application, problem, set, kind, dataset, options),
                });
            }
        }
    }
    Matrix {
        problem: problem.clone(),
        applications: applications.to_vec(),
        sets: sets.to_vec(),
        kinds: kinds.to_vec(),
        cells,
    }
}

/// Members of `candidates` on which the application has a supported
/// measurement for the problem (under any metric), in candidate order.
/// May be empty; an empty result must not be fed to [`pp`].
pub fn supported_subset(
    application: &ApplicationId,
    problem: &ProblemId,
    candidates: &PlatformSet,
    dataset: &Dataset,
) -> Vec<PlatformId> {
    candidates
        .members()
        .iter()
        .filter(|p| {
            dataset.measurements().iter().any(|m| {
                &m.application == application
                    && &m.problem == problem
                    && &m.platform == *p
                    && m.is_supported()
            })
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn recs(values: &[f64]) -> Vec<EfficiencyRecord> {
        values
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                EfficiencyRecord::from_value(
                    PlatformId::new(format!("p{i}")).unwrap(),
                    EfficiencyKind::Architectural,
                    v,
                )
            })
            .collect()
    }

    #[test]
    fn table_examples() {
        let v = pp(&recs(&[0.16, 160.0 / 700.0, 0.08])).unwrap();
        assert_relative_eq!(v, 3.0 / (6.25 + 4.375 + 12.5), max_relative = 1e-15);
        assert!((v * 100.0 - 12.97).abs() < 0.005);
        let v = pp(&recs(&[1.0, 0.8, 0.5, 0.2])).unwrap();
        assert_relative_eq!(v, 4.0 / 9.25, max_relative = 1e-15);
        assert_eq!(pp(&recs(&[0.16])).unwrap(), 0.16);
    }

    #[test]
    fn unsupported_gives_zero() {
        let mut r = recs(&[1.0, 0.8, 0.5, 0.2]);
        r.insert(
            3,
            EfficiencyRecord::unsupported(
                PlatformId::new("D").unwrap(),
                EfficiencyKind::Application,
                UnsupportedReason::Declared,
            ),
        );
        assert_eq!(pp(&r).unwrap(), 0.0);
    }

    #[test]
    fn empty_is_error() {
        assert_eq!(pp(&[]), Err(MetricError::EmptySet));
        assert_eq!(harmonic_mean(&[]), None);
    }

    #[test]
    fn equal_values_are_fixed() {
        for x in [1.0, 0.5, 0.123_456_789, 1e-9] {
            for n in 1..20 {
                let v = pp(&recs(&vec![x; n])).unwrap();
                assert_relative_eq!(v, x, max_relative = 4.0 * f64::EPSILON);
            }
        }
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let s = compensated_sum([1e16, 1.0, -1e16]);
        assert_eq!(s, 1.0);
    }
}
