use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::hypercore::{edge_quadratics, Hypergraph, StochasticIncidence};
use crate::objective::smooth::smooth_max_with_weights;
use crate::{Error, Result};

/// How member scores `sᵢ = ⟨Mᵢ, Q⟩` are combined.
///
/// `Minimax` is minimised; the other modes are maximised.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregation {
    /// `maxᵢ sᵢ`.
    Minimax,
    /// `minᵢ sᵢ`.
    Maximin,
    /// `Σᵢ sᵢ`.
    Sum,
    /// `c₀ s₀ + c₁ s₁` with `c₀ = α/λ₁`, `c₁ = (1−α)/λ₂`.
    Pareto { alpha: f64, coefficients: [f64; 2] },
}

impl Aggregation {
    pub fn minimises(&self) -> bool {
        matches!(self, Aggregation::Minimax)
    }
}

/// Symmetric PSD members with their weights folded in (`M′ᵢ = wᵢ Mᵢ`).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticFamily {
    members: Vec<DMatrix<f64>>,
    mode: Aggregation,
}

/// Objective value together with every member score.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub objective: f64,
    pub scores: Vec<f64>,
}

impl Evaluation {
    pub fn score_min(&self) -> f64 {
        self.scores.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn score_max(&self) -> f64 {
        self.scores.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

impl QuadraticFamily {
    pub fn new(members: Vec<(DMatrix<f64>, f64)>, mode: Aggregation) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let n = members[0].0.nrows();
        let mut folded = Vec::with_capacity(members.len());
        for (m, w) in members {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.nrows().max(m.ncols()),
                });
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidInput(format!("member weight {w} is invalid")));
            }
            folded.push(m * w);
        }
        if let Aggregation::Pareto { coefficients, .. } = mode {
            if folded.len() != 2 {
                return Err(Error::InvalidInput(format!(
                    "pareto families have two members, found {}",
                    folded.len()
                )));
            }
            if coefficients.iter().any(|c| !c.is_finite() || *c < 0.0) {
                return Err(Error::InvalidInput("pareto coefficients must be finite and ≥ 0".into()));
            }
        }
        Ok(Self {
            members: folded,
            mode,
        })
    }

    /// Greatest Expected Imbalance: minimax over `w_e 𝓜_e`.
    pub fn greatest_expected_imbalance(h: &Hypergraph, p: &StochasticIncidence) -> Result<Self> {
        Self::per_edge(h, p, Aggregation::Minimax, true)
    }

    /// Least Expected Variance: maximin over `w_e 𝓥_e`.
    pub fn least_expected_variance(h: &Hypergraph, p: &StochasticIncidence) -> Result<Self> {
        Self::per_edge(h, p, Aggregation::Maximin, false)
    }

    /// Total Variance `⟨𝓥, Q⟩`, kept as per-edge members `w_e 𝓥_e` so each
    /// edge remains visible in the score vector.
    pub fn total_variance(h: &Hypergraph, p: &StochasticIncidence) -> Result<Self> {
        Self::per_edge(h, p, Aggregation::Sum, false)
    }

    fn per_edge(h: &Hypergraph, p: &StochasticIncidence, mode: Aggregation, imbalance: bool) -> Result<Self> {
        let n = h.n_vertices();
        let members = edge_quadratics(p)
            .iter()
            .zip(h.weights())
            .map(|(q, &w)| {
                let m = if imbalance {
                    q.imbalance_dense(n)
                } else {
                    q.variance_dense(n)
                };
                (m, w)
            })
            .collect();
        Self::new(members, mode)
    }

    pub fn dim(&self) -> usize {
        self.members[0].nrows()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[DMatrix<f64>] {
        &self.members
    }

    pub fn mode(&self) -> Aggregation {
        self.mode
    }

    pub fn minimises(&self) -> bool {
        self.mode.minimises()
    }

    /// Vertex pairs `u < v` where some member is nonzero off the diagonal.
    pub fn support_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.dim();
        let mut out = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if self
                    .members
                    .iter()
                    .any(|m| m[(u, v)] != 0.0 || m[(v, u)] != 0.0)
                {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Linear weights of the members for the linear modes (`Sum`, `Pareto`).
    pub fn linear_coefficients(&self) -> Option<Vec<f64>> {
        match self.mode {
            Aggregation::Sum => Some(vec![1.0; self.members.len()]),
            Aggregation::Pareto { coefficients, .. } => Some(coefficients.to_vec()),
            _ => None,
        }
    }

    /// `Σᵢ cᵢ Mᵢ` for the linear modes.
    pub fn combined_matrix(&self) -> Option<DMatrix<f64>> {
        let coeffs = self.linear_coefficients()?;
        let n = self.dim();
        Some(
            self.members
                .iter()
                .zip(coeffs)
                .fold(DMatrix::zeros(n, n), |acc, (m, c)| acc + m * c),
        )
    }

    pub fn scores(&self, q: &DMatrix<f64>) -> Result<Vec<f64>> {
        self.members.iter().map(|m| frobenius_score(m, q)).collect()
    }

    /// Combines member scores according to the mode.
    pub fn aggregate(&self, scores: &[f64]) -> f64 {
        match self.mode {
            Aggregation::Minimax => scores.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            Aggregation::Maximin => scores.iter().copied().fold(f64::INFINITY, f64::min),
            Aggregation::Sum => scores.iter().sum(),
            Aggregation::Pareto { coefficients, .. } => {
                coefficients[0] * scores[0] + coefficients[1] * scores[1]
            }
        }
    }

    pub fn evaluate(&self, q: &DMatrix<f64>) -> Result<Evaluation> {
        let scores = self.scores(q)?;
        Ok(Evaluation {
            objective: self.aggregate(&scores),
            scores,
        })
    }

    /// Objective in minimisation orientation: itself for `Minimax`, negated
    /// otherwise.
    pub fn loss(&self, objective: f64) -> f64 {
        if self.minimises() {
            objective
        } else {
            -objective
        }
    }

    /// Smoothed loss (always minimised) and its derivative with respect to
    /// each member score. Max and min are replaced by LogSumExp at
    /// temperature `tau`; the linear modes are exact.
    pub fn surrogate(&self, scores: &[f64], tau: f64) -> Result<(f64, Vec<f64>)> {
        match self.mode {
            Aggregation::Minimax => smooth_max_with_weights(scores, tau),
            Aggregation::Maximin => {
                let negated: Vec<f64> = scores.iter().map(|s| -s).collect();
                let (value, weights) = smooth_max_with_weights(&negated, tau)?;
                Ok((value, weights.into_iter().map(|w| -w).collect()))
            }
            Aggregation::Sum => Ok((-scores.iter().sum::<f64>(), vec![-1.0; scores.len()])),
            Aggregation::Pareto { coefficients, .. } => Ok((
                -(coefficients[0] * scores[0] + coefficients[1] * scores[1]),
                vec![-coefficients[0], -coefficients[1]],
            )),
        }
    }

    /// Whether smoothing applies, i.e. the mode is not linear.
    pub fn is_smoothed(&self) -> bool {
        matches!(self.mode, Aggregation::Minimax | Aggregation::Maximin)
    }
}

/// `⟨M, Q⟩_F = tr(Mᵀ Q)`.
pub fn frobenius_score(m: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<f64> {
    if m.shape() != q.shape() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: q.nrows(),
        });
    }
    Ok(m.iter().zip(q.iter()).map(|(a, b)| a * b).sum())
}

/// Direction-aware quality ratio for reports: `achieved / optimal` for the
/// maximisation problems, `None` for minimax (report absolute values there,
/// the optimum may be zero) or when the optimum is zero.
pub fn approximation_ratio(minimises: bool, achieved: f64, optimal: f64) -> Option<f64> {
    if minimises || optimal == 0.0 {
        None
    } else {
        Some(achieved / optimal)
    }
}
