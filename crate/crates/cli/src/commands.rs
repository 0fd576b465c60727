//! Subcommands. Each returns the paths it wrote so callers and tests can
//! inspect them.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use disthyp::gen::{KarloffSpec, PoissonSpec};
use disthyp::hypercore::{write_hypergraph, Format};
use disthyp::objective::{approximation_ratio, QuadraticFamily};
use disthyp::qsim::AnsatzParams;
use log::{info, warn};
use serde::Serialize;

use crate::config::{
    worker_count, ConfigFile, GridArgs, InstanceArgs, InstanceSource, Problem, SolverArgs, SolverKind, SolverSettings,
};
use crate::error::{CliError, CliResult};
use crate::report::{append_rows, write_rows, write_text, CsvRow, SolveReport};
use crate::runner::{
    build_family, instance_name, list_instances, load_instance, pareto_spec, parallel_map, qaoa_warm,
    run_solver, Instance, Outcome,
};
use crate::svg::{render, Chart, Series};

#[derive(Debug, Parser)]
#[command(name = "disthyp", version, about = "Distributional hypergraph objectives: QAOA, SDP and exact solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate instances.
    Gen(GenArgs),
    /// Run one solver on one instance.
    Solve(SolveArgs),
    /// Sweep the Pareto weight α.
    Pareto(ParetoArgs),
    /// QAOA at p = 1..P with warm starts.
    SweepLayers(SweepArgs),
    /// QAOA vs SDP vs exact over a directory of instances.
    Compare(CompareArgs),
}

pub fn run(cli: Cli) -> CliResult<Vec<PathBuf>> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a).map(|(_, paths)| paths),
        Command::Pareto(a) => cmd_pareto(a),
        Command::SweepLayers(a) => cmd_sweep_layers(a),
        Command::Compare(a) => cmd_compare(a),
    }
}

fn create_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display(), e))
}

// ---------------------------------------------------------------- gen

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FileFormat {
    Json,
    Hmetis,
    Benson,
}

impl FileFormat {
    fn format(self) -> Format {
        match self {
            FileFormat::Json => Format::Json,
            FileFormat::Hmetis => Format::Hmetis,
            FileFormat::Benson => Format::Benson,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            FileFormat::Json => ".json",
            FileFormat::Hmetis => ".hgr",
            FileFormat::Benson => "-nverts.txt",
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub generator: Generator,
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: FileFormat,
}

#[derive(Debug, Subcommand)]
pub enum Generator {
    /// Random hypergraph with Poisson edge sizes.
    Poisson {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        mu: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances to write, with seeds seed, seed+1, ...
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Maximal cliques of a Karloff graph.
    KarloffCliques {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        b: usize,
    },
}

/// Generator name, its parameters and the seed (null when deterministic).
#[derive(Serialize)]
struct Provenance<'a> {
    generator: &'static str,
    params: serde_json::Value,
    seed: Option<u64>,
    n_vertices: usize,
    n_edges: usize,
    digest: &'a str,
}

impl<'a> Provenance<'a> {
    fn new(source: &InstanceSource, inst: &'a Instance) -> Self {
        let (generator, params, seed) = match source {
            InstanceSource::Poisson(s) => (
                "poisson",
                serde_json::json!({ "n": s.n_vertices, "m": s.n_edges, "mu": s.mu }),
                Some(s.seed),
            ),
            InstanceSource::KarloffCliques(s) => {
                ("karloff_cliques", serde_json::json!({ "m": s.m, "t": s.t, "b": s.b }), None)
            }
            InstanceSource::File { path } => ("file", serde_json::json!({ "path": path }), None),
        };
        Self {
            generator,
            params,
            seed,
            n_vertices: inst.n(),
            n_edges: inst.m(),
            digest: &inst.digest,
        }
    }
}

pub fn cmd_gen(args: GenArgs) -> CliResult<Vec<PathBuf>> {
    let sources: Vec<InstanceSource> = match args.generator {
        Generator::Poisson {
            n,
            m,
            mu,
            seed,
            count,
        } => (0..count as u64)
            .map(|i| {
                InstanceSource::Poisson(PoissonSpec {
                    n_vertices: n,
                    n_edges: m,
                    mu,
                    seed: seed.wrapping_add(i),
                })
            })
            .collect(),
        Generator::KarloffCliques { m, t, b } => vec![InstanceSource::KarloffCliques(KarloffSpec { m, t, b })],
    };
    if sources.is_empty() {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    create_dir(&args.out)?;
    let mut written = Vec::new();
    for source in &sources {
        let inst = load_instance(source, None)?;
        let path = args.out.join(format!("{}{}", inst.name, args.format.suffix()));
        write_hypergraph(&path, &inst.hypergraph, args.format.format()).map_err(|e| CliError::io(path.display(), e))?;
        let prov = Provenance::new(source, &inst);
        let prov_path = args.out.join(format!("{}.provenance.json", inst.name));
        let text = serde_json::to_string_pretty(&prov).expect("provenance serialisation is infallible");
        write_text(&prov_path, &(text + "\n"))?;
        info!("wrote {} ({} vertices, {} edges)", path.display(), inst.n(), inst.m());
        written.push(path);
        written.push(prov_path);
    }
    Ok(written)
}

// ---------------------------------------------------------------- solve

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Instance supplying the variance matrix of a Pareto objective.
    #[arg(long)]
    pub instance2: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub problem: Option<Problem>,
    #[arg(long, value_enum)]
    pub solver: Option<SolverKind>,
    /// Pareto weight.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[command(flatten)]
    pub solver_args: SolverArgs,
}

fn load_second(path: Option<&Path>) -> CliResult<Option<Instance>> {
    path.map(|p| load_instance(&InstanceSource::File { path: p.to_path_buf() }, None)).transpose()
}

fn required<T>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required")))
}

pub fn cmd_solve(args: SolveArgs) -> CliResult<(SolveReport, Vec<PathBuf>)> {
    let file = args.solver_args.file()?;
    let problem = required(args.problem.or(file.problem), "problem")?;
    let solver = required(args.solver.or(file.solver), "solver")?;
    let alpha = args.alpha.or(file.alpha);
    let instance2 = args.instance2.or_else(|| file.instance2.clone());
    let (source, incidence) = args.instance.resolve(&file)?;
    let settings = args.solver_args.resolve(&file)?;

    let inst = load_instance(&source, incidence.as_deref())?;
    let second = load_second(instance2.as_deref())?;
    let fam = build_family(problem, &inst, second.as_ref(), alpha)?;
    let out = run_solver(solver, problem, &fam, &settings)?;
    let alpha = (problem == Problem::Pareto).then_some(alpha).flatten();
    let report = SolveReport::new(&inst, problem, alpha, &out, settings.timings);
    report.validate(&fam)?;

    create_dir(&settings.out)?;
    let json = settings.out.join(format!("{}_{}_{}.json", inst.name, problem.id(), solver.id()));
    write_text(&json, &(report.to_json() + "\n"))?;
    let csv = settings.out.join("results.csv");
    append_rows(&csv, &[report.csv_row()])?;
    info!("{} {} {}: objective {:.6}", inst.name, problem.id(), solver.id(), report.objective);
    Ok((report, vec![json, csv]))
}

// ---------------------------------------------------------------- pareto

#[derive(Debug, Args)]
pub struct ParetoArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Instance supplying the variance matrix; the first instance when absent.
    #[arg(long)]
    pub instance2: Option<PathBuf>,
    /// Solvers to run at every α (comma separated).
    #[arg(long, value_enum, value_delimiter = ',')]
    pub solvers: Vec<SolverKind>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub solver_args: SolverArgs,
}

/// A Pareto front row: the standard columns plus both front coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrontRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub problem: String,
    pub solver: String,
    pub p: Option<usize>,
    pub alpha: Option<f64>,
    pub objective: f64,
    pub score_min: f64,
    pub score_max: f64,
    pub iters: usize,
    pub seconds: Option<f64>,
    pub seed: Option<u64>,
    pub m1_score: f64,
    pub v2_score: f64,
}

impl FrontRow {
    fn new(row: CsvRow, scores: &[f64]) -> Self {
        Self {
            instance: row.instance,
            n: row.n,
            m: row.m,
            problem: row.problem,
            solver: row.solver,
            p: row.p,
            alpha: row.alpha,
            objective: row.objective,
            score_min: row.score_min,
            score_max: row.score_max,
            iters: row.iters,
            seconds: row.seconds,
            seed: row.seed,
            m1_score: scores[0],
            v2_score: scores[1],
        }
    }
}

fn default_solvers(flag: Vec<SolverKind>, file: &ConfigFile, fallback: &[SolverKind]) -> Vec<SolverKind> {
    if !flag.is_empty() {
        flag
    } else {
        file.solvers.clone().unwrap_or_else(|| fallback.to_vec())
    }
}

pub fn cmd_pareto(args: ParetoArgs) -> CliResult<Vec<PathBuf>> {
    let file = args.solver_args.file()?;
    let solvers = default_solvers(args.solvers, &file, &[SolverKind::Qaoa, SolverKind::Sdp]);
    let instance2 = args.instance2.or_else(|| file.instance2.clone());
    let (source, incidence) = args.instance.resolve(&file)?;
    let grid = args.grid.resolve(&file)?;
    let settings = args.solver_args.resolve(&file)?;

    let inst = load_instance(&source, incidence.as_deref())?;
    let second = load_second(instance2.as_deref())?;
    let spec = pareto_spec(&inst, second.as_ref(), grid.alphas.clone())?;

    let mut rows = Vec::new();
    let mut series: Vec<Series> = solvers
        .iter()
        .map(|s| Series {
            label: s.id().into(),
            points: Vec::new(),
            line: false,
        })
        .collect();
    let mut warm: Option<AnsatzParams> = None;
    for &alpha in spec.alphas() {
        let fam = spec.family(alpha)?;
        for (k, &solver) in solvers.iter().enumerate() {
            let out = if solver == SolverKind::Qaoa {
                let seeded = if grid.warm_start { warm.as_ref() } else { None };
                let out = qaoa_warm(&fam, &settings, seeded)?;
                warm = out.params.clone();
                out
            } else {
                run_solver(solver, Problem::Pareto, &fam, &settings)?
            };
            let report = SolveReport::new(&inst, Problem::Pareto, Some(alpha), &out, settings.timings);
            report.validate(&fam)?;
            series[k].points.push((out.scores[0], out.scores[1]));
            rows.push(FrontRow::new(report.csv_row(), &out.scores));
        }
    }

    create_dir(&settings.out)?;
    let csv = settings.out.join(format!("pareto_{}.csv", inst.name));
    write_rows(&csv, &rows)?;
    let chart = Chart {
        title: format!("Pareto front: {}", inst.name),
        x_label: "imbalance score".into(),
        y_label: "variance score".into(),
        series,
        references: Vec::new(),
        diagonal: false,
    };
    let svg = settings.out.join(format!("pareto_{}.svg", inst.name));
    write_text(&svg, &render(&chart))?;
    Ok(vec![csv, svg])
}

// ---------------------------------------------------------------- sweep-layers

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, value_enum)]
    pub problem: Option<Problem>,
    /// Largest layer count; defaults to `--p`.
    #[arg(long)]
    pub max_p: Option<usize>,
    /// Reference solvers drawn as horizontal lines (comma separated).
    #[arg(long, value_enum, value_delimiter = ',')]
    pub references: Vec<SolverKind>,
    #[command(flatten)]
    pub solver_args: SolverArgs,
}

pub fn cmd_sweep_layers(args: SweepArgs) -> CliResult<Vec<PathBuf>> {
    let file = args.solver_args.file()?;
    let problem = required(args.problem.or(file.problem), "problem")?;
    if problem == Problem::Pareto {
        return Err(CliError::Usage("sweep-layers runs single objectives; use pareto for α sweeps".into()));
    }
    let max_p = args.max_p.or(file.max_p);
    if max_p == Some(0) {
        return Err(CliError::Usage("--max-p must be at least 1".into()));
    }
    let references = default_solvers(args.references, &file, &[SolverKind::Sdp, SolverKind::Exact]);
    let (source, incidence) = args.instance.resolve(&file)?;
    let mut settings = args.solver_args.resolve(&file)?;
    let max_p = max_p.unwrap_or(settings.p);

    let inst = load_instance(&source, incidence.as_deref())?;
    let fam = build_family(problem, &inst, None, None)?;
    let mut rows = Vec::new();
    let mut points = Vec::new();
    let mut warm: Option<AnsatzParams> = None;
    for p in 1..=max_p {
        settings.p = p;
        let out = qaoa_warm(&fam, &settings, warm.as_ref())?;
        let report = SolveReport::new(&inst, problem, None, &out, settings.timings);
        report.validate(&fam)?;
        info!("p = {p}: objective {:.6}", out.objective);
        points.push((p as f64, out.objective));
        rows.push(report.csv_row());
        warm = out.params;
    }
    let mut lines = Vec::new();
    for &kind in references.iter().filter(|k| **k != SolverKind::Qaoa) {
        let out = match run_solver(kind, problem, &fam, &settings) {
            Ok(out) => out,
            Err(e @ CliError::Usage(_)) | Err(e @ CliError::Resource(_)) => {
                warn!("skipping the {} reference: {e}", kind.id());
                continue;
            }
            Err(e) => return Err(e),
        };
        let report = SolveReport::new(&inst, problem, None, &out, settings.timings);
        report.validate(&fam)?;
        lines.push((kind.id().to_string(), out.objective));
        rows.push(report.csv_row());
    }

    create_dir(&settings.out)?;
    let stem = format!("layers_{}_{}", inst.name, problem.id());
    let csv = settings.out.join(format!("{stem}.csv"));
    write_rows(&csv, &rows)?;
    let chart = Chart {
        title: format!("{} on {} by layer count", problem.id(), inst.name),
        x_label: "layers p".into(),
        y_label: "objective".into(),
        series: vec![Series {
            label: "qaoa".into(),
            points,
            line: true,
        }],
        references: lines,
        diagonal: false,
    };
    let svg = settings.out.join(format!("{stem}.svg"));
    write_text(&svg, &render(&chart))?;
    Ok(vec![csv, svg])
}

// ---------------------------------------------------------------- compare

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Directory of instance files.
    #[arg(long)]
    pub dir: Option<PathBuf>,
    /// Problems to run (comma separated).
    #[arg(long, value_enum, value_delimiter = ',')]
    pub problems: Vec<Problem>,
    /// Skip the exact solver.
    #[arg(long)]
    pub no_exact: bool,
    #[command(flatten)]
    pub solver_args: SolverArgs,
}

/// One instance and problem of a comparison. Ratios are `value / exact`
/// for the maximisation problems and blank for minimax, where the optimum
/// can be zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub problem: String,
    pub qaoa: f64,
    pub sdp: f64,
    pub exact: Option<f64>,
    pub sdp_bound: f64,
    pub qaoa_ratio: Option<f64>,
    pub sdp_ratio: Option<f64>,
    /// QAOA strictly better than SDP rounding, in the problem's direction.
    pub qaoa_wins: bool,
}

/// Win counts per problem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WinRate {
    pub problem: String,
    pub instances: usize,
    pub qaoa_wins: usize,
    pub rate: f64,
}

/// QAOA must beat rounding by more than this to count as a win.
pub const WIN_MARGIN: f64 = 1e-9;

struct InstanceResult {
    rows: Vec<CompareRow>,
    results: Vec<CsvRow>,
}

fn compare_instance(path: &Path, problems: &[Problem], settings: &SolverSettings, exact: bool) -> CliResult<InstanceResult> {
    let inst = load_instance(&InstanceSource::File { path: path.to_path_buf() }, None)?;
    let mut rows = Vec::new();
    let mut results = Vec::new();
    for &problem in problems {
        let fam = build_family(problem, &inst, None, None)?;
        let mut run = |kind: SolverKind| -> CliResult<Outcome> {
            let out = run_solver(kind, problem, &fam, settings)?;
            let report = SolveReport::new(&inst, problem, None, &out, settings.timings);
            report.validate(&fam)?;
            results.push(report.csv_row());
            Ok(out)
        };
        let q = run(SolverKind::Qaoa)?;
        let s = run(SolverKind::Sdp)?;
        let e = if exact { Some(run(SolverKind::Exact)?.objective) } else { None };
        let ratio = |v: f64| e.and_then(|opt| approximation_ratio(fam.minimises(), v, opt));
        rows.push(CompareRow {
            instance: inst.name.clone(),
            n: inst.n(),
            m: inst.m(),
            problem: problem.id().into(),
            qaoa: q.objective,
            sdp: s.objective,
            exact: e,
            sdp_bound: s.bound.expect("the SDP reports its relaxation value"),
            qaoa_ratio: ratio(q.objective),
            sdp_ratio: ratio(s.objective),
            qaoa_wins: wins(&fam, q.objective, s.objective),
        });
    }
    Ok(InstanceResult { rows, results })
}

fn wins(fam: &QuadraticFamily, qaoa: f64, sdp: f64) -> bool {
    fam.loss(qaoa) < fam.loss(sdp) - WIN_MARGIN
}

pub fn win_rates(rows: &[CompareRow], problems: &[Problem]) -> Vec<WinRate> {
    problems
        .iter()
        .map(|p| {
            let of: Vec<&CompareRow> = rows.iter().filter(|r| r.problem == p.id()).collect();
            let won = of.iter().filter(|r| r.qaoa_wins).count();
            WinRate {
                problem: p.id().into(),
                instances: of.len(),
                qaoa_wins: won,
                rate: if of.is_empty() { 0.0 } else { won as f64 / of.len() as f64 },
            }
        })
        .collect()
}

pub fn cmd_compare(args: CompareArgs) -> CliResult<Vec<PathBuf>> {
    let file = args.solver_args.file()?;
    let dir = required(args.dir.or_else(|| file.dir.clone()), "dir")?;
    let problems = if !args.problems.is_empty() {
        args.problems
    } else {
        file.problems.clone().unwrap_or_else(|| vec![Problem::Gei, Problem::Lev, Problem::TotalVariance])
    };
    if problems.contains(&Problem::Pareto) {
        return Err(CliError::Usage("compare runs single objectives; use pareto for α sweeps".into()));
    }
    let settings = args.solver_args.resolve(&file)?;
    let mut paths = list_instances(&dir)?;
    if paths.is_empty() {
        return Err(CliError::Usage(format!("no instance files in {}", dir.display())));
    }
    // Output is ordered by instance name.
    paths.sort_by_key(|p| instance_name(p));

    let outcomes = parallel_map(&paths, worker_count()?, |p| compare_instance(p, &problems, &settings, !args.no_exact));
    let mut rows = Vec::new();
    let mut results = Vec::new();
    let mut failures = 0;
    for (path, outcome) in paths.iter().zip(outcomes) {
        match outcome {
            Ok(r) => {
                rows.extend(r.rows);
                results.extend(r.results);
            }
            Err(e) => {
                warn!("skipping {}: {e}", path.display());
                failures += 1;
            }
        }
    }
    if failures == paths.len() {
        return Err(CliError::Io(format!("every instance in {} failed", dir.display())));
    }

    create_dir(&settings.out)?;
    let mut written = Vec::new();
    let csv = settings.out.join("compare.csv");
    write_rows(&csv, &rows)?;
    written.push(csv);
    let results_csv = settings.out.join("compare_results.csv");
    write_rows(&results_csv, &results)?;
    written.push(results_csv);
    for &problem in &problems {
        let points: Vec<(f64, f64)> = rows.iter().filter(|r| r.problem == problem.id()).map(|r| (r.sdp, r.qaoa)).collect();
        let chart = Chart {
            title: format!("{}: QAOA vs SDP rounding", problem.id()),
            x_label: "SDP rounding".into(),
            y_label: "QAOA".into(),
            series: vec![Series {
                label: "qaoa".into(),
                points,
                line: false,
            }],
            references: Vec::new(),
            diagonal: true,
        };
        let svg = settings.out.join(format!("compare_{}.svg", problem.id()));
        write_text(&svg, &render(&chart))?;
        written.push(svg);
    }
    let rates = win_rates(&rows, &problems);
    for r in &rates {
        info!("{}: QAOA beats SDP rounding on {}/{} instances", r.problem, r.qaoa_wins, r.instances);
    }
    let summary = settings.out.join("compare_summary.json");
    write_text(&summary, &(serde_json::to_string_pretty(&rates).expect("summary serialisation") + "\n"))?;
    written.push(summary);
    Ok(written)
}

