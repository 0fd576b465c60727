//! Command arguments and their resolution: flags, then the JSON config
//! file, then defaults.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use disthyp::gen::{KarloffSpec, PoissonSpec};
use disthyp::objective::alpha_grid;
use disthyp::qsim::TrainConfig;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Problem {
    Gei,
    Lev,
    TotalVariance,
    Pareto,
}

impl Problem {
    pub fn id(self) -> &'static str {
        match self {
            Problem::Gei => "gei",
            Problem::Lev => "lev",
            Problem::TotalVariance => "total_variance",
            Problem::Pareto => "pareto",
        }
    }

    /// Sum and Pareto objectives are linear in `Q`.
    pub fn is_linear(self) -> bool {
        matches!(self, Problem::TotalVariance | Problem::Pareto)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    Qaoa,
    Sdp,
    Exact,
    Brute,
}

impl SolverKind {
    pub fn id(self) -> &'static str {
        match self {
            SolverKind::Qaoa => "qaoa",
            SolverKind::Sdp => "sdp",
            SolverKind::Exact => "exact",
            SolverKind::Brute => "brute",
        }
    }
}

/// Where an instance comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "snake_case")]
pub enum InstanceSource {
    File { path: PathBuf },
    Poisson(PoissonSpec),
    KarloffCliques(KarloffSpec),
}

impl InstanceSource {
    /// `poisson:n=12,m=16,mu=4,seed=7` or `karloff:m=6,t=3,b=1`.
    pub fn parse_generator(spec: &str) -> CliResult<Self> {
        let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let mut fields = std::collections::BTreeMap::new();
        for kv in rest.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("generator field {kv:?} is not key=value")))?;
            fields.insert(k.trim(), v.trim());
        }
        let get = |key: &str| -> CliResult<&str> {
            fields
                .get(key)
                .copied()
                .ok_or_else(|| CliError::Usage(format!("generator {kind:?} needs {key}=")))
        };
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> CliResult<T> {
            v.parse().map_err(|_| CliError::Usage(format!("bad value {v:?} for {key}")))
        }
        let source = match kind {
            "poisson" => InstanceSource::Poisson(PoissonSpec {
                n_vertices: num("n", get("n")?)?,
                n_edges: num("m", get("m")?)?,
                mu: num("mu", get("mu")?)?,
                seed: fields.get("seed").map(|v| num("seed", v)).transpose()?.unwrap_or(0),
            }),
            "karloff" | "karloff-cliques" => InstanceSource::KarloffCliques(KarloffSpec {
                m: num("m", get("m")?)?,
                t: num("t", get("t")?)?,
                b: num("b", get("b")?)?,
            }),
            other => return Err(CliError::Usage(format!("unknown generator {other:?}"))),
        };
        Ok(source)
    }
}

/// Every key a JSON config file may set. Flags override these.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub instance: Option<PathBuf>,
    pub instance2: Option<PathBuf>,
    pub incidence: Option<PathBuf>,
    pub generate: Option<String>,
    pub dir: Option<PathBuf>,
    pub problem: Option<Problem>,
    pub problems: Option<Vec<Problem>>,
    pub solver: Option<SolverKind>,
    pub solvers: Option<Vec<SolverKind>>,
    pub out: Option<PathBuf>,
    pub p: Option<usize>,
    pub max_p: Option<usize>,
    pub seed: Option<u64>,
    pub restarts: Option<usize>,
    pub max_iters: Option<usize>,
    pub patience: Option<usize>,
    pub tolerance: Option<f64>,
    pub lr: Option<f64>,
    pub init_cap: Option<f64>,
    pub qubit_cap: Option<usize>,
    pub sdp_tol: Option<f64>,
    pub exact_eps: Option<f64>,
    pub alpha: Option<f64>,
    pub alpha_start: Option<f64>,
    pub alpha_stop: Option<f64>,
    pub alpha_count: Option<usize>,
    pub window: Option<String>,
    pub warm_start: Option<bool>,
    pub timings: Option<bool>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }
}

/// Copies each listed field from the config file where the flag was unset.
macro_rules! fill {
    ($args:expr, $file:expr, $($field:ident),+ $(,)?) => {
        $( if $args.$field.is_none() { $args.$field = $file.$field.clone(); } )+
    };
}

/// Training, solver and seeding knobs shared by the solving commands.
#[derive(Debug, Clone, Default, Args)]
pub struct SolverArgs {
    /// JSON config file; flags take precedence over its keys.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// QAOA layers.
    #[arg(long)]
    pub p: Option<usize>,
    /// Base seed; restarts use seed, seed+1, ...
    #[arg(long)]
    pub seed: Option<u64>,
    /// Independent QAOA initialisations; the best is reported.
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub patience: Option<usize>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Adam learning rate.
    #[arg(long)]
    pub lr: Option<f64>,
    /// Initial angles are uniform in [-init_cap, init_cap].
    #[arg(long)]
    pub init_cap: Option<f64>,
    #[arg(long)]
    pub qubit_cap: Option<usize>,
    /// Interior-point tolerance of the SDP relaxation.
    #[arg(long)]
    pub sdp_tol: Option<f64>,
    /// Target duality gap of the exact game solver.
    #[arg(long)]
    pub exact_eps: Option<f64>,
    /// Fill the `seconds` CSV column (makes output time dependent).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub timings: Option<bool>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Fully resolved solver settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverSettings {
    pub p: usize,
    pub seeds: Vec<u64>,
    pub train: TrainConfig,
    pub sdp_tol: f64,
    pub exact_eps: f64,
    pub timings: bool,
    pub out: PathBuf,
}

pub const DEFAULT_LAYERS: usize = 3;
pub const DEFAULT_SDP_TOL: f64 = 1e-7;
pub const DEFAULT_EXACT_EPS: f64 = 1e-4;

impl SolverArgs {
    pub fn file(&self) -> CliResult<ConfigFile> {
        self.config.as_deref().map(ConfigFile::load).transpose().map(Option::unwrap_or_default)
    }

    pub fn resolve(mut self, file: &ConfigFile) -> CliResult<SolverSettings> {
        fill!(self, file, p, seed, restarts, max_iters, patience, tolerance, lr, init_cap, qubit_cap, sdp_tol, exact_eps, timings, out);
        let mut train = TrainConfig::default();
        if let Some(v) = self.max_iters {
            train.max_iters = v;
        }
        if let Some(v) = self.patience {
            train.patience = v;
        }
        if let Some(v) = self.tolerance {
            train.tolerance = v;
        }
        if let Some(v) = self.lr {
            train.adam.lr = v;
        }
        if let Some(v) = self.init_cap {
            train.init_cap = v;
        }
        if let Some(v) = self.qubit_cap {
            train.qubit_cap = v;
        }
        train.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        let p = self.p.unwrap_or(DEFAULT_LAYERS);
        if p == 0 {
            return Err(CliError::Usage("--p must be at least 1".into()));
        }
        let restarts = self.restarts.unwrap_or(1);
        if restarts == 0 {
            return Err(CliError::Usage("--restarts must be at least 1".into()));
        }
        let seed = self.seed.unwrap_or(0);
        let sdp_tol = self.sdp_tol.unwrap_or(DEFAULT_SDP_TOL);
        let exact_eps = self.exact_eps.unwrap_or(DEFAULT_EXACT_EPS);
        if !(sdp_tol > 0.0) || !(exact_eps > 0.0) {
            return Err(CliError::Usage("tolerances must be positive".into()));
        }
        Ok(SolverSettings {
            p,
            seeds: (0..restarts as u64).map(|i| seed.wrapping_add(i)).collect(),
            train,
            sdp_tol,
            exact_eps,
            timings: self.timings.unwrap_or(false),
            out: self.out.unwrap_or_else(|| PathBuf::from(".")),
        })
    }
}

/// Instance selection.
#[derive(Debug, Clone, Default, Args)]
pub struct InstanceArgs {
    /// Instance file (`.json`, `*-nverts.txt` Benson pair, or hMETIS text).
    #[arg(long)]
    pub instance: Option<PathBuf>,
    /// Generator spec instead of a file, e.g. `poisson:n=12,m=16,mu=4,seed=7`.
    #[arg(long, conflicts_with = "instance")]
    pub generate: Option<String>,
    /// Weighted-incidence file; uniform shares when absent.
    #[arg(long)]
    pub incidence: Option<PathBuf>,
}

impl InstanceArgs {
    pub fn resolve(mut self, file: &ConfigFile) -> CliResult<(InstanceSource, Option<PathBuf>)> {
        if self.instance.is_none() && self.generate.is_none() {
            fill!(self, file, instance, generate);
        }
        fill!(self, file, incidence);
        let source = match (self.instance, self.generate) {
            (Some(path), None) => InstanceSource::File { path },
            (None, Some(spec)) => InstanceSource::parse_generator(&spec)?,
            (Some(_), Some(_)) => return Err(CliError::Usage("give either an instance or a generator, not both".into())),
            (None, None) => return Err(CliError::Usage("an instance (--instance or --generate) is required".into())),
        };
        Ok((source, self.incidence))
    }
}

/// α grid for Pareto sweeps.
#[derive(Debug, Clone, Default, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub alpha_start: Option<f64>,
    #[arg(long)]
    pub alpha_stop: Option<f64>,
    #[arg(long)]
    pub alpha_count: Option<usize>,
    /// Keep only α in `lo:hi` (inclusive).
    #[arg(long)]
    pub window: Option<String>,
    /// Start each α from the previous α's best angles.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub warm_start: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSettings {
    pub alphas: Vec<f64>,
    pub warm_start: bool,
}

impl GridArgs {
    pub fn resolve(mut self, file: &ConfigFile) -> CliResult<GridSettings> {
        fill!(self, file, alpha_start, alpha_stop, alpha_count, window, warm_start);
        let start = self.alpha_start.unwrap_or(0.0);
        let stop = self.alpha_stop.unwrap_or(1.0);
        let count = self.alpha_count.unwrap_or(11);
        let mut alphas = alpha_grid(start, stop, count).map_err(|e| CliError::Usage(e.to_string()))?;
        if let Some(w) = &self.window {
            let (lo, hi) = parse_window(w)?;
            alphas.retain(|a| (lo - WINDOW_SLACK..=hi + WINDOW_SLACK).contains(a));
            if alphas.is_empty() {
                return Err(CliError::Usage(format!("window {w} leaves no α values")));
            }
        }
        Ok(GridSettings {
            alphas,
            warm_start: self.warm_start.unwrap_or(false),
        })
    }
}

/// Grid points are computed in floating point; keep ones on the boundary.
const WINDOW_SLACK: f64 = 1e-12;

fn parse_window(w: &str) -> CliResult<(f64, f64)> {
    let bad = || CliError::Usage(format!("window {w:?} is not lo:hi"));
    let (lo, hi) = w.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Reads `DISTHYP_THREADS`; unset means the available parallelism.
pub fn worker_count() -> CliResult<usize> {
    let available = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    match std::env::var("DISTHYP_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) | Err(_) => Err(CliError::Usage(format!("DISTHYP_THREADS={v:?} is not a positive integer"))),
            Ok(k) => Ok(k),
        },
        Err(_) => Ok(available),
    }
}
