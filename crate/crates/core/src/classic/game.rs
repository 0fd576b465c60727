use std::collections::BTreeMap;

use log::debug;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::classic::brute::extremal_quadratic;
use crate::classic::simplex::solve_matrix_game;
use crate::objective::{Aggregation, QuadraticFamily, SpinDistribution, SupportRecord};
use crate::spins::{from_bitstring, quadratic_form, to_bitstring};
use crate::{Error, Result};

/// Largest vertex count for the exact solver.
pub const EXACT_CAP: usize = 20;

/// Recomputed certificate values must match stored ones to this tolerance.
pub const VERIFY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct GameConfig {
    /// Target duality gap.
    pub eps: f64,
    /// Multiplicative-weights rounds before polishing.
    pub mwu_rounds: usize,
    /// Close any remaining gap by re-solving the game restricted to the
    /// best responses seen so far, adding priced columns until certified.
    pub polish: bool,
    pub polish_rounds: usize,
}

impl Default for GameConfig {
    fn default() -> Self {
        Self {
            eps: 1e-4,
            mwu_rounds: 200,
            polish: true,
            polish_rounds: 10_000,
        }
    }
}

impl GameConfig {
    pub fn with_eps(eps: f64) -> Self {
        Self {
            eps,
            ..Self::default()
        }
    }
}

/// A distribution over spin vectors paired with a distribution over family
/// members, with the two bounds they certify.
///
/// For minimax, `primal_value = maxᵢ ⟨Mᵢ, Q_q⟩` bounds the optimum from
/// above and `dual_value = min_x xᵀ(Σλᵢ Mᵢ)x` from below. Maximin swaps the
/// roles of max and min. `gap` is always the nonnegative width
/// `|primal_value − dual_value|` of the certified interval.
#[derive(Debug, Clone, PartialEq)]
pub struct GameCertificate {
    pub primal: SpinDistribution,
    pub dual: Vec<f64>,
    pub primal_value: f64,
    pub dual_value: f64,
    pub gap: f64,
    pub minimises: bool,
    pub rounds: usize,
    pub converged: bool,
}

/// Serialised certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub support: Vec<SupportRecord>,
    pub dual: Vec<f64>,
    pub primal_value: f64,
    pub dual_value: f64,
    pub gap: f64,
}

fn game_mode(fam: &QuadraticFamily) -> Result<bool> {
    match fam.mode() {
        Aggregation::Minimax => Ok(true),
        Aggregation::Maximin => Ok(false),
        _ => Err(Error::InvalidInput(
            "the game solver handles minimax and maximin families".into(),
        )),
    }
}

/// Per-member expectations `Σ_x q_x xᵀMᵢx`.
fn member_values(fam: &QuadraticFamily, support: &[(Vec<i8>, f64)]) -> Vec<f64> {
    fam.members()
        .iter()
        .map(|m| support.iter().map(|(x, p)| p * quadratic_form(m, x)).sum())
        .collect()
}

fn mixture(fam: &QuadraticFamily, lambda: &[f64]) -> DMatrix<f64> {
    let n = fam.dim();
    fam.members()
        .iter()
        .zip(lambda)
        .fold(DMatrix::zeros(n, n), |acc, (m, &l)| acc + m * l)
}

/// Best response of the distribution player to member weights `lambda`:
/// the extremal `xᵀ(Σλᵢ Mᵢ)x` in the family's direction.
pub fn best_response(fam: &QuadraticFamily, lambda: &[f64]) -> Result<(f64, Vec<i8>)> {
    let minimises = game_mode(fam)?;
    extremal_quadratic(&mixture(fam, lambda), !minimises, EXACT_CAP)
}

impl GameCertificate {
    /// Builds a certificate, computing both values from the strategies.
    pub fn from_strategies(fam: &QuadraticFamily, primal: SpinDistribution, dual: Vec<f64>) -> Result<Self> {
        let minimises = game_mode(fam)?;
        if dual.len() != fam.len() {
            return Err(Error::DimensionMismatch {
                expected: fam.len(),
                found: dual.len(),
            });
        }
        if primal.n() != fam.dim() {
            return Err(Error::DimensionMismatch {
                expected: fam.dim(),
                found: primal.n(),
            });
        }
        if dual.iter().any(|l| !l.is_finite() || *l < 0.0) || (dual.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput("dual weights must form a probability vector".into()));
        }
        let primal_value = fam.aggregate(&member_values(fam, primal.support()));
        let dual_value = best_response(fam, &dual)?.0;
        Ok(Self {
            gap: (primal_value - dual_value).abs(),
            primal,
            dual,
            primal_value,
            dual_value,
            minimises,
            rounds: 0,
            converged: false,
        })
    }

    /// The certified optimum estimate: the primal value.
    pub fn value(&self) -> f64 {
        self.primal_value
    }

    /// Recomputes both values from the stored strategies and checks them,
    /// and that the bounds are ordered, to [`VERIFY_TOL`].
    pub fn verify(&self, fam: &QuadraticFamily) -> Result<()> {
        let fresh = Self::from_strategies(fam, self.primal.clone(), self.dual.clone())?;
        if (fresh.primal_value - self.primal_value).abs() > VERIFY_TOL
            || (fresh.dual_value - self.dual_value).abs() > VERIFY_TOL
        {
            return Err(Error::InvalidInput(format!(
                "certificate values ({}, {}) do not match recomputed ({}, {})",
                self.primal_value, self.dual_value, fresh.primal_value, fresh.dual_value
            )));
        }
        let oriented = if self.minimises {
            self.primal_value - self.dual_value
        } else {
            self.dual_value - self.primal_value
        };
        if oriented < -VERIFY_TOL {
            return Err(Error::InvalidInput(format!("certificate bounds cross by {oriented}")));
        }
        Ok(())
    }

    pub fn to_record(&self) -> CertificateRecord {
        CertificateRecord {
            support: self.primal.to_records(),
            dual: self.dual.clone(),
            primal_value: self.primal_value,
            dual_value: self.dual_value,
            gap: self.gap,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("certificate serialises")
    }

    /// Rebuilds a certificate from a record; values are taken as stored, so
    /// call [`GameCertificate::verify`] to check them.
    pub fn from_record(fam: &QuadraticFamily, record: &CertificateRecord) -> Result<Self> {
        let minimises = game_mode(fam)?;
        let primal = record.distribution(fam.dim())?;
        if record.dual.len() != fam.len() {
            return Err(Error::DimensionMismatch {
                expected: fam.len(),
                found: record.dual.len(),
            });
        }
        Ok(Self {
            primal,
            dual: record.dual.clone(),
            primal_value: record.primal_value,
            dual_value: record.dual_value,
            gap: record.gap,
            minimises,
            rounds: 0,
            converged: record.gap.is_finite(),
        })
    }
}

impl CertificateRecord {
    pub fn distribution(&self, n: usize) -> Result<SpinDistribution> {
        let support = self
            .support
            .iter()
            .map(|r| Ok((from_bitstring(&r.x)?, r.p)))
            .collect::<Result<Vec<_>>>()?;
        SpinDistribution::new(n, support)
    }
}

/// Parses and structurally validates a certificate dump: consistent
/// bitstring lengths, a valid support distribution, a probability vector of
/// duals and finite values.
pub fn parse_certificate(text: &str) -> Result<CertificateRecord> {
    let record: CertificateRecord = serde_json::from_str(text)?;
    let n = record
        .support
        .first()
        .map(|r| r.x.chars().count())
        .ok_or_else(|| Error::InvalidInput("certificate support is empty".into()))?;
    record.distribution(n)?;
    if record.dual.is_empty()
        || record.dual.iter().any(|l| !l.is_finite() || *l < 0.0)
        || (record.dual.iter().sum::<f64>() - 1.0).abs() > 1e-9
    {
        return Err(Error::InvalidInput("dual weights must form a probability vector".into()));
    }
    if ![record.primal_value, record.dual_value, record.gap].iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidInput("certificate values must be finite".into()));
    }
    Ok(record)
}

/// Tracks the best certified bounds in the minimising orientation (internal
/// payoffs are negated for maximin).
struct Bounds {
    sign: f64,
    upper: f64,
    lower: f64,
    primal: Vec<(Vec<i8>, f64)>,
    dual: Vec<f64>,
}

impl Bounds {
    fn gap(&self) -> f64 {
        self.upper - self.lower
    }

    fn offer_primal(&mut self, fam: &QuadraticFamily, support: Vec<(Vec<i8>, f64)>) {
        let upper = member_values(fam, &support)
            .into_iter()
            .map(|v| self.sign * v)
            .fold(f64::NEG_INFINITY, f64::max);
        if upper < self.upper {
            self.upper = upper;
            self.primal = support;
        }
    }

    fn offer_dual(&mut self, response_value: f64, lambda: &[f64]) {
        let lower = self.sign * response_value;
        if lower > self.lower {
            self.lower = lower;
            self.dual = lambda.to_vec();
        }
    }
}

fn normalised_support(counts: &BTreeMap<String, f64>) -> Result<Vec<(Vec<i8>, f64)>> {
    let total: f64 = counts.values().sum();
    counts
        .iter()
        .filter(|(_, &c)| c > 0.0)
        .map(|(bits, &c)| Ok((from_bitstring(bits)?, c / total)))
        .collect()
}

/// Exact optimum of a minimax or maximin family over all spin
/// distributions, with a duality-gap certificate.
///
/// Multiplicative weights on the member distribution against exhaustive best
/// responses runs first; if the gap is still above `eps` and polishing is
/// on, the game restricted to the collected responses is solved exactly and
/// extended by the best response to its optimal member weights until the gap
/// closes. A certificate that misses `eps` is returned with
/// `converged = false`.
pub fn exact_minimax(fam: &QuadraticFamily, cfg: &GameConfig) -> Result<GameCertificate> {
    let minimises = game_mode(fam)?;
    let n = fam.dim();
    if n > EXACT_CAP {
        return Err(Error::Resource(format!(
            "exact solving is limited to {EXACT_CAP} vertices, got {n}"
        )));
    }
    if !(cfg.eps > 0.0) {
        return Err(Error::InvalidInput(format!("gap target {} must be positive", cfg.eps)));
    }
    let sign = if minimises { 1.0 } else { -1.0 };
    let k = fam.len();
    let rho: f64 = fam
        .members()
        .iter()
        .map(|m| m.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let ln_k = (k as f64).ln();
    let target_rounds = (4.0 * rho * rho * ln_k / (cfg.eps * cfg.eps)).ceil().max(1.0);
    let horizon = target_rounds.min(cfg.mwu_rounds.max(1) as f64);
    let eta = (ln_k / horizon).sqrt() / rho;

    let mut bounds = Bounds {
        sign,
        upper: f64::INFINITY,
        lower: f64::NEG_INFINITY,
        primal: Vec::new(),
        dual: vec![1.0 / k as f64; k],
    };
    let mut lambda = vec![1.0 / k as f64; k];
    let mut counts: BTreeMap<String, f64> = BTreeMap::new();
    let mut rounds = 0;

    for _ in 0..horizon as usize {
        rounds += 1;
        let (value, x) = best_response(fam, &lambda)?;
        bounds.offer_dual(value, &lambda);
        *counts.entry(to_bitstring(&x)).or_default() += 1.0;
        bounds.offer_primal(fam, normalised_support(&counts)?);
        debug!("mwu round {rounds}: gap {:.3e}", bounds.gap());
        if bounds.gap() <= cfg.eps {
            break;
        }
        let payoffs: Vec<f64> = fam.members().iter().map(|m| sign * quadratic_form(m, &x)).collect();
        let top = payoffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for (l, p) in lambda.iter_mut().zip(&payoffs) {
            *l *= (eta * (p - top)).exp();
        }
        let total: f64 = lambda.iter().sum();
        lambda.iter_mut().for_each(|l| *l /= total);
    }

    if cfg.polish && bounds.gap() > cfg.eps {
        let mut columns: Vec<Vec<i8>> = counts
            .keys()
            .map(|b| from_bitstring(b))
            .collect::<Result<_>>()?;
        for _ in 0..cfg.polish_rounds {
            rounds += 1;
            let g = DMatrix::from_fn(k, columns.len(), |i, j| sign * quadratic_form(&fam.members()[i], &columns[j]));
            let game = solve_matrix_game(&g)?;
            let support: Vec<(Vec<i8>, f64)> = columns
                .iter()
                .zip(&game.cols)
                .filter(|(_, &p)| p > 0.0)
                .map(|(x, &p)| (x.clone(), p))
                .collect();
            bounds.offer_primal(fam, support);
            let (value, x) = best_response(fam, &game.rows)?;
            bounds.offer_dual(value, &game.rows);
            debug!("polish round {rounds}: gap {:.3e}", bounds.gap());
            if bounds.gap() <= cfg.eps || columns.contains(&x) {
                break;
            }
            columns.push(x);
        }
    }

    let primal = SpinDistribution::new(n, bounds.primal.clone())?;
    let mut cert = GameCertificate::from_strategies(fam, primal, bounds.dual.clone())?;
    cert.rounds = rounds;
    cert.converged = cert.gap <= cfg.eps;
    Ok(cert)
}
