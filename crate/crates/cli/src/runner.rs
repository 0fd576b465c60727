//! Instance loading and solver dispatch.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use disthyp::classic::{
    extremal_quadratic, rounding_autocorrelation, solve_exact, solve_sdp, GameConfig, BRUTE_FORCE_CAP,
};
use disthyp::gen::{karloff_clique_hypergraph, poisson_hypergraph};
use disthyp::hypercore::io::instance_json;
use disthyp::hypercore::{
    parse_incidence, read_hypergraph, uniform_incidence, AggregateQuadratics, Format, Hypergraph, StochasticIncidence,
};
use disthyp::objective::{autocorrelation_of, ParetoSpec, QuadraticFamily, SupportRecord};
use disthyp::qsim::{train_from, train_seeds, AnsatzParams, TrainReport, ZzOperator};
use nalgebra::DMatrix;
use sha2::{Digest, Sha256};

use crate::config::{InstanceSource, Problem, SolverKind, SolverSettings};
use crate::error::{CliError, CliResult};

/// A loaded instance with its incidence shares.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub hypergraph: Hypergraph,
    pub incidence: StochasticIncidence,
    /// SHA-256 of the canonical JSON dump.
    pub digest: String,
}

impl Instance {
    pub fn new(name: String, hypergraph: Hypergraph, incidence: StochasticIncidence) -> Self {
        let digest = Sha256::digest(instance_json(&hypergraph).as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        Self {
            name,
            hypergraph,
            incidence,
            digest,
        }
    }

    pub fn n(&self) -> usize {
        self.hypergraph.n_vertices()
    }

    pub fn m(&self) -> usize {
        self.hypergraph.n_edges()
    }
}

/// File name of an instance without its format suffix.
pub fn instance_name(path: &Path) -> String {
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());
    for suffix in ["-nverts.txt", ".json", ".hgr", ".txt"] {
        if let Some(stem) = name.strip_suffix(suffix) {
            return stem.to_string();
        }
    }
    name
}

pub fn generated_name(source: &InstanceSource) -> String {
    match source {
        InstanceSource::File { path } => instance_name(path),
        InstanceSource::Poisson(s) => format!("poisson_n{}_m{}_mu{}_s{}", s.n_vertices, s.n_edges, s.mu, s.seed),
        InstanceSource::KarloffCliques(s) => format!("karloff_m{}_t{}_b{}", s.m, s.t, s.b),
    }
}

pub fn generate(source: &InstanceSource) -> CliResult<Hypergraph> {
    Ok(match source {
        InstanceSource::File { path } => {
            read_hypergraph(path, Format::from_path(path)).map_err(|e| CliError::io(path.display(), e))?
        }
        InstanceSource::Poisson(spec) => poisson_hypergraph(spec)?,
        InstanceSource::KarloffCliques(spec) => karloff_clique_hypergraph(spec)?,
    })
}

pub fn load_instance(source: &InstanceSource, incidence: Option<&Path>) -> CliResult<Instance> {
    let h = generate(source)?;
    let p = match incidence {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
            parse_incidence(&text, &h).map_err(|e| CliError::io(path.display(), e))?
        }
        None => uniform_incidence(&h),
    };
    Ok(Instance::new(generated_name(source), h, p))
}

/// The objective family of `problem`. Pareto needs `alpha`; its second
/// instance defaults to the first.
pub fn build_family(
    problem: Problem,
    inst: &Instance,
    second: Option<&Instance>,
    alpha: Option<f64>,
) -> CliResult<QuadraticFamily> {
    let (h, p) = (&inst.hypergraph, &inst.incidence);
    Ok(match problem {
        Problem::Gei => QuadraticFamily::greatest_expected_imbalance(h, p)?,
        Problem::Lev => QuadraticFamily::least_expected_variance(h, p)?,
        Problem::TotalVariance => QuadraticFamily::total_variance(h, p)?,
        Problem::Pareto => {
            let alpha = alpha.ok_or_else(|| CliError::Usage("the pareto problem needs --alpha".into()))?;
            pareto_spec(inst, second, vec![alpha])?.family(alpha)?
        }
    })
}

/// `(𝓜 of the first instance, 𝓥 of the second)` over `alphas`.
pub fn pareto_spec(first: &Instance, second: Option<&Instance>, alphas: Vec<f64>) -> CliResult<ParetoSpec> {
    let second = second.unwrap_or(first);
    if second.n() != first.n() {
        return Err(CliError::Usage(format!(
            "pareto instances need the same vertex count, got {} and {}",
            first.n(),
            second.n()
        )));
    }
    let m1 = AggregateQuadratics::new(&first.hypergraph, &first.incidence).imbalance;
    let v2 = AggregateQuadratics::new(&second.hypergraph, &second.incidence).variance;
    Ok(ParetoSpec::new(m1, v2, alphas)?)
}

/// Result of one solver on one family.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub solver: SolverKind,
    /// Objective of `q` under the family.
    pub objective: f64,
    pub scores: Vec<f64>,
    pub q: DMatrix<f64>,
    pub support: Option<Vec<SupportRecord>>,
    /// The relaxation value for SDP, the certified dual value for exact.
    pub bound: Option<f64>,
    pub gap: Option<f64>,
    pub iterations: usize,
    pub seconds: f64,
    pub seed: Option<u64>,
    pub p: Option<usize>,
    pub params: Option<AnsatzParams>,
}

fn outcome(solver: SolverKind, fam: &QuadraticFamily, q: DMatrix<f64>, start: Instant) -> CliResult<Outcome> {
    let eval = fam.evaluate(&q)?;
    Ok(Outcome {
        solver,
        objective: eval.objective,
        scores: eval.scores,
        q,
        support: None,
        bound: None,
        gap: None,
        iterations: 0,
        seconds: start.elapsed().as_secs_f64(),
        seed: None,
        p: None,
        params: None,
    })
}

pub fn qaoa_outcome(fam: &QuadraticFamily, report: &TrainReport, iterations: usize, start: Instant) -> CliResult<Outcome> {
    let mut out = outcome(SolverKind::Qaoa, fam, report.q.matrix().clone(), start)?;
    out.iterations = iterations;
    out.seed = Some(report.seed);
    out.p = Some(report.params.layers());
    out.params = Some(report.params.clone());
    Ok(out)
}

/// Runs one solver. Unsupported pairs are usage errors; size limits are
/// resource errors.
pub fn run_solver(kind: SolverKind, problem: Problem, fam: &QuadraticFamily, s: &SolverSettings) -> CliResult<Outcome> {
    let start = Instant::now();
    match kind {
        SolverKind::Qaoa => {
            let cost = ZzOperator::from_family(fam);
            let (reports, best) = train_seeds(fam, &cost, s.p, &s.train, &s.seeds)?;
            let iterations = reports.iter().map(|r| r.iterations).sum();
            qaoa_outcome(fam, &reports[best], iterations, start)
        }
        SolverKind::Sdp => {
            let sol = solve_sdp(fam, s.sdp_tol)?;
            let q = rounding_autocorrelation(sol.point.matrix())?;
            let mut out = outcome(kind, fam, q.into_matrix(), start)?;
            out.bound = Some(sol.value);
            out.gap = Some(sol.gap);
            out.iterations = sol.iterations;
            Ok(out)
        }
        SolverKind::Exact => {
            let sol = solve_exact(fam, &GameConfig::with_eps(s.exact_eps))?;
            let q = autocorrelation_of(&sol.distribution);
            let mut out = outcome(kind, fam, q.into_matrix(), start)?;
            out.support = Some(sol.distribution.to_records());
            if let Some(cert) = &sol.certificate {
                out.bound = Some(cert.dual_value);
                out.gap = Some(cert.gap);
                out.iterations = cert.rounds;
            }
            Ok(out)
        }
        SolverKind::Brute => {
            if !problem.is_linear() {
                return Err(CliError::Usage(format!(
                    "the brute solver handles linear objectives (total_variance, pareto), not {}",
                    problem.id()
                )));
            }
            let c = fam.combined_matrix().expect("linear family");
            let (_, x) = extremal_quadratic(&c, true, BRUTE_FORCE_CAP)?;
            let d = disthyp::objective::SpinDistribution::point_mass(x)?;
            let mut out = outcome(kind, fam, autocorrelation_of(&d).into_matrix(), start)?;
            out.support = Some(d.to_records());
            Ok(out)
        }
    }
}

/// QAOA at `p` layers from the zero-padded best angles of a smaller circuit,
/// in addition to the fresh seeded runs; the better result is kept.
pub fn qaoa_warm(fam: &QuadraticFamily, s: &SolverSettings, warm: Option<&AnsatzParams>) -> CliResult<Outcome> {
    let start = Instant::now();
    let cost = ZzOperator::from_family(fam);
    let (mut reports, _) = train_seeds(fam, &cost, s.p, &s.train, &s.seeds)?;
    if let Some(w) = warm {
        let mut cfg = s.train.clone();
        cfg.seed = s.seeds[0];
        reports.push(train_from(fam, &cost, w.padded(s.p)?, &cfg)?);
    }
    let iterations = reports.iter().map(|r| r.iterations).sum();
    let best = best_report(fam, &reports);
    qaoa_outcome(fam, &reports[best], iterations, start)
}

/// Index of the best report in the family's orientation; ties go to the
/// earliest.
pub fn best_report(fam: &QuadraticFamily, reports: &[TrainReport]) -> usize {
    let mut best = 0;
    for (i, r) in reports.iter().enumerate() {
        if fam.loss(r.objective) < fam.loss(reports[best].objective) {
            best = i;
        }
    }
    best
}

/// Maps `f` over `items` on up to `workers` threads; results keep input order.
pub fn parallel_map<T: Sync, R: Send>(items: &[T], workers: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = workers.clamp(1, items.len().max(1));
    if workers == 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                slots.lock().expect("no worker panics while holding the lock")[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .expect("workers finished")
        .into_iter()
        .map(|r| r.expect("every index is processed"))
        .collect()
}

/// Instance files in `dir`, sorted by name. Benson simplices companions are
/// skipped; their `-nverts.txt` partner is listed.
pub fn list_instances(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::io(dir.display(), e))?;
    let mut paths = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| CliError::io(dir.display(), e))?.path();
        let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let is_instance = name.ends_with(".json") && !name.ends_with(".provenance.json")
            || name.ends_with(".hgr")
            || name.ends_with("-nverts.txt");
        if path.is_file() && is_instance {
            paths.push(path);
        }
    }
    paths.sort();
    Ok(paths)
}
