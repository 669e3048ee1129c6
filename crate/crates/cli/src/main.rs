use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ppmetric::data::{
    load_externals_file, load_measurements_file, load_specs_file, validate_parts,
};
use ppmetric::report::{best_rows, best_table, MatrixReport, PPReport};
use ppmetric::{
    corpus, parse_sets, pp_for, subset_analysis, supported_subset, AnalysisOptions, ApplicationId,
    ClampPolicy, DataError, Dataset, EfficiencyKind, PlatformId, PlatformSet, ProblemId, Reduce,
    ValidationOptions,
};

/// Performance-portability reports: harmonic mean of per-platform
/// efficiencies over a platform set, zero if any platform is unsupported.
#[derive(Parser)]
#[command(name = "ppmetric", version, propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check measurement, spec and external-ceiling files for consistency.
    Validate(DataArgs),
    /// Portability of one application over one platform set.
    Pp(PpArgs),
    /// Portability matrix: applications x platform sets x efficiency kinds.
    Matrix(MatrixArgs),
    /// Best-observed ceilings per platform, with the contributing application.
    Best(BestArgs),
    /// Long-form CSV of per-platform efficiencies and portability, for plotting.
    Plotdata(PlotdataArgs),
}

#[derive(Args, Clone)]
struct DataArgs {
    /// Use a bundled corpus (`tableI` or `gpustream-shape`) instead of files.
    #[arg(long, conflicts_with_all = ["measurements", "specs", "externals"])]
    corpus: Option<String>,
    /// Measurement file (CSV, or JSON with a .json extension).
    #[arg(long, required_unless_present = "corpus")]
    measurements: Option<PathBuf>,
    /// Platform peak file.
    #[arg(long)]
    specs: Option<PathBuf>,
    /// External best-known ceilings.
    #[arg(long)]
    externals: Option<PathBuf>,
    /// How repeated runs of one tuple are combined.
    #[arg(long, value_enum, default_value_t = ReduceArg::Best)]
    reduce: ReduceArg,
}

#[derive(Args, Clone)]
struct AnalysisArgs {
    /// Problem name; may be omitted when the dataset has a single problem.
    #[arg(long)]
    problem: Option<String>,
    #[arg(long, value_enum, default_value_t = KindArg::Both)]
    kind: KindArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Map efficiencies above 1 to 1 (with a warning) instead of failing.
    #[arg(long)]
    clamp: bool,
    /// Unit label of the metric to use instead of the per-kind default.
    #[arg(long)]
    units: Option<String>,
}

#[derive(Args)]
struct PpArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    analysis: AnalysisArgs,
    /// Application as NAME or NAME/VARIANT.
    #[arg(long)]
    app: String,
    /// Platform set as `label:p1,p2,...`, or the bare label of a set bundled
    /// with `--corpus`. The label `supported` keeps only the listed platforms
    /// (all, if none are listed) the application supports.
    #[arg(long)]
    set: String,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    analysis: AnalysisArgs,
    /// Comma-separated applications (NAME matches every variant), or `all`.
    #[arg(long, default_value = "all")]
    apps: String,
    /// File with one `label:p1,p2,...` per line; defaults to the corpus sets.
    #[arg(long)]
    sets: Option<PathBuf>,
}

#[derive(Args)]
struct BestArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    platform: Option<String>,
}

#[derive(Args)]
struct PlotdataArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    /// Output path for the CSV.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceArg {
    Best,
    Mean,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Arch,
    App,
    Both,
}

impl KindArg {
    fn kinds(self) -> Vec<EfficiencyKind> {
        match self {
            Self::Arch => vec![EfficiencyKind::Architectural],
            Self::App => vec![EfficiencyKind::Application],
            Self::Both => EfficiencyKind::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

/// Exit status 1 for environment problems, 2 for data problems.
enum Failure {
    Io(String),
    Data(String),
}

impl From<DataError> for Failure {
    fn from(e: DataError) -> Self {
        if e.is_io() {
            Failure::Io(e.to_string())
        } else {
            Failure::Data(e.to_string())
        }
    }
}

fn data_err(e: impl std::fmt::Display) -> Failure {
    Failure::Data(e.to_string())
}

struct Loaded {
    dataset: Dataset,
    default_sets: Vec<PlatformSet>,
}

fn reduce(arg: ReduceArg) -> Reduce {
    match arg {
        ReduceArg::Best => Reduce::Best,
        ReduceArg::Mean => Reduce::Mean,
    }
}

fn provenance(args: &DataArgs) -> String {
    let mut parts = Vec::new();
    for (label, p) in [
        ("measurements", &args.measurements),
        ("specs", &args.specs),
        ("externals", &args.externals),
    ] {
        if let Some(p) = p {
            parts.push(format!("{label}={}", p.display()));
        }
    }
    parts.join(" ")
}

/// Raw measurements, platform specs and external ceilings.
type Parts = (
    Vec<ppmetric::Measurement>,
    Vec<ppmetric::PlatformSpec>,
    Vec<ppmetric::BestObserved>,
);

fn load_parts(args: &DataArgs) -> Result<Parts, Failure> {
    let measurements = match &args.measurements {
        Some(p) => load_measurements_file(p, reduce(args.reduce))?,
        None => Vec::new(),
    };
    let specs = match &args.specs {
        Some(p) => load_specs_file(p)?,
        None => Vec::new(),
    };
    let externals = match &args.externals {
        Some(p) => load_externals_file(p)?,
        None => Vec::new(),
    };
    Ok((measurements, specs, externals))
}

fn load(args: &DataArgs) -> Result<Loaded, Failure> {
    if let Some(name) = &args.corpus {
        let c = corpus(name)?;
        return Ok(Loaded {
            dataset: c.dataset,
            default_sets: c.sets,
        });
    }
    let (measurements, specs, externals) = load_parts(args)?;
    let dataset = Dataset::new(measurements, specs, externals, provenance(args))?;
    Ok(Loaded {
        dataset,
        default_sets: Vec::new(),
    })
}

fn resolve_problem(dataset: &Dataset, name: Option<&str>) -> Result<ProblemId, Failure> {
    match name {
        Some(n) => dataset
            .problem(n)
            .ok_or_else(|| Failure::Data(format!("no data for problem `{n}`"))),
        None => {
            let mut names: Vec<&str> = dataset
                .measurements()
                .iter()
                .map(|m| m.problem.name())
                .collect();
            names.sort_unstable();
            names.dedup();
            match names.as_slice() {
                [one] => Ok(dataset.problem(one).expect("present")),
                [] => Err(Failure::Data("dataset has no measurements".to_owned())),
                many => Err(Failure::Data(format!(
                    "dataset has several problems ({}); pick one with --problem",
                    many.join(", ")
                ))),
            }
        }
    }
}

fn resolve_app(
    dataset: &Dataset,
    problem: &ProblemId,
    spec: &str,
) -> Result<ApplicationId, Failure> {
    let wanted = ApplicationId::parse(spec).map_err(data_err)?;
    let apps = dataset.applications(problem);
    if apps.contains(&wanted) {
        return Ok(wanted);
    }
    let by_name: Vec<&ApplicationId> = apps.iter().filter(|a| a.name() == wanted.name()).collect();
    match (wanted.variant(), by_name.as_slice()) {
        (None, [one]) => Ok((*one).clone()),
        (None, []) | (Some(_), _) => Err(Failure::Data(format!(
            "application `{spec}` has no measurements for {problem}"
        ))),
        (None, many) => Err(Failure::Data(format!(
            "application `{spec}` is ambiguous: {}",
            many.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        ))),
    }
}

fn select_apps(
    dataset: &Dataset,
    problem: &ProblemId,
    filter: &str,
) -> Result<Vec<ApplicationId>, Failure> {
    let apps = dataset.applications(problem);
    if filter == "all" {
        return Ok(apps);
    }
    let wanted = filter
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(ApplicationId::parse)
        .collect::<Result<Vec<_>, _>>()
        .map_err(data_err)?;
    let selected: Vec<ApplicationId> = apps
        .into_iter()
        .filter(|a| {
            wanted.iter().any(|w| match w.variant() {
                Some(_) => w == a,
                None => w.name() == a.name(),
            })
        })
        .collect();
    if selected.is_empty() {
        return Err(Failure::Data(format!("no application matches `{filter}`")));
    }
    Ok(selected)
}

fn options(analysis: &AnalysisArgs) -> AnalysisOptions {
    AnalysisOptions {
        clamp: if analysis.clamp {
            ClampPolicy::Clamp
        } else {
            ClampPolicy::Reject
        },
        units: analysis.units.clone(),
    }
}

fn warn_clamped(results: &[&ppmetric::PPResult]) {
    for r in results {
        for p in r.clamped_platforms() {
            eprintln!(
                "warning: {} efficiency of {} on {} exceeded its ceiling and was clamped to 1",
                r.kind, r.application, p
            );
        }
    }
}

/// Expands the `supported` pseudo-label against the application's
/// supported platforms and resolves bare labels of bundled sets; other sets
/// pass through.
fn expand_set(
    spec: &str,
    known: &[PlatformSet],
    app: &ApplicationId,
    problem: &ProblemId,
    dataset: &Dataset,
) -> Result<PlatformSet, Failure> {
    let (label, list) = spec.split_once(':').unwrap_or((spec, ""));
    if !spec.contains(':') {
        if let Some(set) = known.iter().find(|s| s.label() == spec.trim()) {
            return Ok(set.clone());
        }
    }
    if label.trim() != "supported" {
        return PlatformSet::parse(spec).map_err(data_err);
    }
    let candidates: Vec<PlatformId> = if list.trim().is_empty() {
        dataset.platforms(problem)
    } else {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(PlatformId::new)
            .collect::<Result<_, _>>()
            .map_err(data_err)?
    };
    let candidates = PlatformSet::new("supported", candidates).map_err(data_err)?;
    let members = supported_subset(app, problem, &candidates, dataset);
    PlatformSet::new("supported", members).map_err(|_| {
        Failure::Data(format!(
            "{app} is supported on none of the candidate platforms"
        ))
    })
}

fn cmd_validate(args: &DataArgs) -> Result<(), Failure> {
    let (measurements, specs, externals) = match &args.corpus {
        Some(name) => {
            let c = corpus(name)?;
            let ds = c.dataset;
            (
                ds.measurements().to_vec(),
                ds.specs().to_vec(),
                ds.externals().to_vec(),
            )
        }
        None => load_parts(args)?,
    };
    let report = validate_parts(
        &measurements,
        &specs,
        &externals,
        ValidationOptions {
            architectural: !specs.is_empty(),
        },
    );
    if report.is_empty() {
        println!(
            "ok: {} measurements, {} platform specs, {} external ceilings",
            measurements.len(),
            specs.len(),
            externals.len()
        );
        Ok(())
    } else {
        print!("{report}");
        Err(Failure::Data(format!("{} violation(s)", report.len())))
    }
}

fn cmd_pp(args: &PpArgs) -> Result<(), Failure> {
    let loaded = load(&args.data)?;
    let ds = &loaded.dataset;
    let problem = resolve_problem(ds, args.analysis.problem.as_deref())?;
    let app = resolve_app(ds, &problem, &args.app)?;
    let set = expand_set(&args.set, &loaded.default_sets, &app, &problem, ds)?;
    let opts = options(&args.analysis);
    let results = args
        .analysis
        .kind
        .kinds()
        .into_iter()
        .map(|k| pp_for(&app, &problem, &set, k, ds, &opts))
        .collect::<Result<Vec<_>, _>>()
        .map_err(data_err)?;
    warn_clamped(&results.iter().collect::<Vec<_>>());
    let report = PPReport::new(results, ds.provenance()).map_err(data_err)?;
    print!(
        "{}",
        match args.analysis.format {
            FormatArg::Table => report.to_table(),
            FormatArg::Csv => report.to_csv(),
            FormatArg::Json => report.to_json(),
        }
    );
    Ok(())
}

fn build_matrix(args: &MatrixArgs) -> Result<MatrixReport, Failure> {
    let loaded = load(&args.data)?;
    let ds = &loaded.dataset;
    let problem = resolve_problem(ds, args.analysis.problem.as_deref())?;
    let apps = select_apps(ds, &problem, &args.apps)?;
    let sets = match &args.sets {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            parse_sets(&text)?
        }
        None if !loaded.default_sets.is_empty() => loaded.default_sets.clone(),
        None => {
            return Err(Failure::Data(
                "--sets FILE is required outside bundled corpora".to_owned(),
            ))
        }
    };
    if sets.is_empty() {
        return Err(Failure::Data("no platform sets given".to_owned()));
    }
    let matrix = subset_analysis(
        &apps,
        &problem,
        &sets,
        &args.analysis.kind.kinds(),
        ds,
        &options(&args.analysis),
    );
    warn_clamped(
        &matrix
            .cells
            .iter()
            .filter_map(|c| c.result.as_ref().ok())
            .collect::<Vec<_>>(),
    );
    MatrixReport::new(matrix, ds.provenance()).map_err(data_err)
}

fn cmd_matrix(args: &MatrixArgs) -> Result<(), Failure> {
    let report = build_matrix(args)?;
    print!(
        "{}",
        match args.analysis.format {
            FormatArg::Table => report.to_table(),
            FormatArg::Csv => report.to_csv(),
            FormatArg::Json => report.to_json(),
        }
    );
    Ok(())
}

fn cmd_best(args: &BestArgs) -> Result<(), Failure> {
    let loaded = load(&args.data)?;
    let ds = &loaded.dataset;
    let problem = resolve_problem(ds, args.problem.as_deref())?;
    let platform = args
        .platform
        .as_deref()
        .map(PlatformId::new)
        .transpose()
        .map_err(data_err)?;
    let rows = best_rows(ds, &problem, platform.as_ref());
    if rows.iter().all(|r| r.ceiling.is_none()) {
        return Err(Failure::Data(format!(
            "no best-observed data for {problem}"
        )));
    }
    print!(
        "{}",
        best_table(&rows, &ds.applications(&problem), &problem, ds.provenance())
            .map_err(data_err)?
    );
    Ok(())
}

fn cmd_plotdata(args: &PlotdataArgs) -> Result<(), Failure> {
    let report = build_matrix(&args.matrix)?;
    write_file(&args.out, &report.to_plotdata())
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(a) => cmd_validate(a),
        Command::Pp(a) => cmd_pp(a),
        Command::Matrix(a) => cmd_matrix(a),
        Command::Best(a) => cmd_best(a),
        Command::Plotdata(a) => cmd_plotdata(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
