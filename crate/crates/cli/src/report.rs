//! JSON solve reports and the fixed-column CSV.

use std::path::Path;

use disthyp::objective::{QuadraticFamily, SupportRecord};
use disthyp::qsim::AnsatzParams;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::config::Problem;
use crate::error::{CliError, CliResult};
use crate::runner::{Instance, Outcome};

/// Re-evaluating a stored `Q` must reproduce the stored objective this
/// closely.
pub const REPORT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub instance: String,
    pub digest: String,
    pub problem: Problem,
    pub solver: String,
    pub n: usize,
    pub m: usize,
    pub p: Option<usize>,
    pub alpha: Option<f64>,
    pub objective: f64,
    pub scores: Vec<f64>,
    /// Row-major autocorrelation.
    pub q: Vec<Vec<f64>>,
    pub support: Option<Vec<SupportRecord>>,
    pub bound: Option<f64>,
    pub gap: Option<f64>,
    pub iterations: usize,
    /// Only recorded with `--timings`.
    pub seconds: Option<f64>,
    pub seed: Option<u64>,
    pub params: Option<AnsatzParams>,
}

impl SolveReport {
    pub fn new(inst: &Instance, problem: Problem, alpha: Option<f64>, out: &Outcome, timings: bool) -> Self {
        let q = (0..out.q.nrows()).map(|i| out.q.row(i).iter().copied().collect()).collect();
        Self {
            instance: inst.name.clone(),
            digest: inst.digest.clone(),
            problem,
            solver: out.solver.id().into(),
            n: inst.n(),
            m: inst.m(),
            p: out.p,
            alpha,
            objective: out.objective,
            scores: out.scores.clone(),
            q,
            support: out.support.clone(),
            bound: out.bound,
            gap: out.gap,
            iterations: out.iterations,
            seconds: timings.then_some(out.seconds),
            seed: out.seed,
            params: out.params.clone(),
        }
    }

    pub fn q_matrix(&self) -> DMatrix<f64> {
        let n = self.q.len();
        DMatrix::from_fn(n, n, |i, j| self.q[i][j])
    }

    /// Checks that the stored `Q` reproduces the stored objective.
    pub fn validate(&self, fam: &QuadraticFamily) -> CliResult<()> {
        let eval = fam.evaluate(&self.q_matrix())?;
        if (eval.objective - self.objective).abs() > REPORT_TOL * (1.0 + self.objective.abs()) {
            return Err(CliError::Solver(disthyp::Error::InvalidInput(format!(
                "stored objective {} but Q evaluates to {}",
                self.objective, eval.objective
            ))));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialisation is infallible")
    }

    pub fn csv_row(&self) -> CsvRow {
        CsvRow {
            instance: self.instance.clone(),
            n: self.n,
            m: self.m,
            problem: self.problem.id().into(),
            solver: self.solver.clone(),
            p: self.p,
            alpha: self.alpha,
            objective: self.objective,
            score_min: self.scores.iter().copied().fold(f64::INFINITY, f64::min),
            score_max: self.scores.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            iters: self.iterations,
            seconds: self.seconds,
            seed: self.seed,
        }
    }
}

pub const CSV_COLUMNS: [&str; 13] = [
    "instance", "n", "m", "problem", "solver", "p", "alpha", "objective", "score_min", "score_max", "iters", "seconds",
    "seed",
];

/// One result row; empty optional fields are blank cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
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
}

/// Writes `rows` (with a header) to a new file.
pub fn write_rows<R: Serialize>(path: &Path, rows: &[R]) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::io(path.display(), e))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| CliError::io(path.display(), e))?;
    Ok(())
}

/// Appends rows, writing the header only if the file is new or empty.
pub fn append_rows(path: &Path, rows: &[CsvRow]) -> CliResult<()> {
    let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| CliError::io(path.display(), e))?;
    let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| CliError::io(path.display(), e))?;
    Ok(())
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path.display(), e))
}
