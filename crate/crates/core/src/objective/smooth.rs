use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// LogSumExp maximum `τ log Σ exp(vᵢ/τ)`, shifted by `max(v)` so the result
/// is finite for all finite inputs.
///
/// `max(v) ≤ smooth_max(v) ≤ max(v) + τ log k`.
pub fn smooth_max(values: &[f64], tau: f64) -> Result<f64> {
    smooth_max_with_weights(values, tau).map(|(v, _)| v)
}

/// `−smooth_max(−v)`.
pub fn smooth_min(values: &[f64], tau: f64) -> Result<f64> {
    let negated: Vec<f64> = values.iter().map(|v| -v).collect();
    smooth_max(&negated, tau).map(|v| -v)
}

/// Smooth maximum together with its gradient, the softmax weights.
pub fn smooth_max_with_weights(values: &[f64], tau: f64) -> Result<(f64, Vec<f64>)> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::InvalidInput(format!("temperature {tau} must be positive")));
    }
    if values.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let top = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = values.iter().map(|v| ((v - top) / tau).exp()).collect();
    let total: f64 = exps.iter().sum();
    let value = top + tau * total.ln();
    Ok((value, exps.into_iter().map(|e| e / total).collect()))
}

/// Geometric temperature annealing: `initial · factor^⌊iter/every⌋`, never
/// below `floor`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TemperatureSchedule {
    pub initial: f64,
    pub factor: f64,
    pub every: usize,
    pub floor: f64,
}

impl Default for TemperatureSchedule {
    fn default() -> Self {
        Self {
            initial: 0.05,
            factor: 0.7,
            every: 50,
            floor: 1e-3,
        }
    }
}

impl TemperatureSchedule {
    pub fn at(&self, iter: usize) -> f64 {
        let steps = (iter / self.every.max(1)) as i32;
        (self.initial * self.factor.powi(steps)).max(self.floor)
    }
}
