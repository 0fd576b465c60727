use nalgebra::DMatrix;

use crate::classic::lambda_max;
use crate::objective::{Aggregation, QuadraticFamily};
use crate::{Error, Result};

/// Relative tolerance for the scaling eigenvalues.
const LAMBDA_TOL: f64 = 1e-10;

/// Scaled pair `(𝓜₁, 𝓥₂)` swept over an α grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoSpec {
    m1: DMatrix<f64>,
    v2: DMatrix<f64>,
    lambda1: f64,
    lambda2: f64,
    alphas: Vec<f64>,
}

impl ParetoSpec {
    /// Computes both scaling eigenvalues once. `alphas` must be sorted and
    /// inside `[0, 1]`.
    pub fn new(m1: DMatrix<f64>, v2: DMatrix<f64>, alphas: Vec<f64>) -> Result<Self> {
        if m1.shape() != v2.shape() || m1.nrows() != m1.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m1.nrows(),
                found: v2.nrows(),
            });
        }
        if alphas.iter().any(|a| !(0.0..=1.0).contains(a)) {
            return Err(Error::InvalidInput("α values must lie in [0, 1]".into()));
        }
        if alphas.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput("α values must be sorted".into()));
        }
        let lambda1 = lambda_max(&m1, LAMBDA_TOL);
        let lambda2 = lambda_max(&v2, LAMBDA_TOL);
        Ok(Self {
            m1,
            v2,
            lambda1,
            lambda2,
            alphas,
        })
    }

    pub fn m1(&self) -> &DMatrix<f64> {
        &self.m1
    }

    pub fn v2(&self) -> &DMatrix<f64> {
        &self.v2
    }

    pub fn lambdas(&self) -> (f64, f64) {
        (self.lambda1, self.lambda2)
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// `[α/λ₁, (1−α)/λ₂]`; a zero λ is only allowed with zero weight.
    pub fn coefficients(&self, alpha: f64) -> Result<[f64; 2]> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidInput(format!("α = {alpha} outside [0, 1]")));
        }
        let scale = |weight: f64, lambda: f64, name: &str| {
            if weight == 0.0 {
                Ok(0.0)
            } else if lambda > 0.0 {
                Ok(weight / lambda)
            } else {
                Err(Error::Degenerate(format!("{name} has zero largest eigenvalue")))
            }
        };
        Ok([
            scale(alpha, self.lambda1, "imbalance matrix")?,
            scale(1.0 - alpha, self.lambda2, "variance matrix")?,
        ])
    }

    /// Two-member family `{𝓜₁, 𝓥₂}` aggregated with the scaled coefficients,
    /// so the member scores are the raw front coordinates.
    pub fn family(&self, alpha: f64) -> Result<QuadraticFamily> {
        let coefficients = self.coefficients(alpha)?;
        QuadraticFamily::new(
            vec![(self.m1.clone(), 1.0), (self.v2.clone(), 1.0)],
            Aggregation::Pareto { alpha, coefficients },
        )
    }
}

/// `𝓞 = α/λ₁ 𝓜₁ + (1−α)/λ₂ 𝓥₂`.
pub fn pareto_objective(spec: &ParetoSpec, alpha: f64) -> Result<DMatrix<f64>> {
    let [c1, c2] = spec.coefficients(alpha)?;
    Ok(&spec.m1 * c1 + &spec.v2 * c2)
}

/// `count` evenly spaced values from `start` to `stop` inclusive.
pub fn alpha_grid(start: f64, stop: f64, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::InvalidInput("α grid needs at least one point".into()));
    }
    if !(0.0..=1.0).contains(&start) || !(0.0..=1.0).contains(&stop) || start > stop {
        return Err(Error::InvalidInput(format!(
            "α range [{start}, {stop}] must satisfy 0 ≤ start ≤ stop ≤ 1"
        )));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i + 1 == count { stop } else { start + step * i as f64 })
        .collect())
}
