use log::debug;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::objective::{Autocorrelation, QuadraticFamily, TemperatureSchedule};
use crate::qsim::adjoint::backward;
use crate::qsim::ansatz::forward_with_cap;
use crate::qsim::{Adam, AdamConfig, AnsatzParams, ZzOperator, MAX_QUBITS};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainConfig {
    pub max_iters: usize,
    /// Window of the stopping rule.
    pub patience: usize,
    /// Stop once the best loss improved by less than this over the window.
    pub tolerance: f64,
    pub adam: AdamConfig,
    /// Initial angles are uniform in `[−init_cap, init_cap]`.
    pub init_cap: f64,
    pub seed: u64,
    pub schedule: TemperatureSchedule,
    pub qubit_cap: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            max_iters: 300,
            patience: 30,
            tolerance: 1e-4,
            adam: AdamConfig::default(),
            init_cap: 5e-2,
            seed: 0,
            schedule: TemperatureSchedule::default(),
            qubit_cap: MAX_QUBITS,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            self.tolerance,
            self.adam.lr,
            self.adam.eps,
            self.schedule.initial,
            self.schedule.floor,
        ];
        if positive.iter().any(|v| !(*v > 0.0) || !v.is_finite())
            || self.patience == 0
            || self.schedule.every == 0
            || !(self.init_cap >= 0.0)
            || !(0.0..1.0).contains(&self.adam.beta1)
            || !(0.0..1.0).contains(&self.adam.beta2)
            || !(self.schedule.factor > 0.0)
        {
            return Err(Error::InvalidInput("training configuration has a non-positive setting".into()));
        }
        Ok(())
    }
}

/// Smoothed loss, true objective and gradient at one parameter point.
#[derive(Debug, Clone)]
pub struct ObjectiveGradient {
    pub loss: f64,
    pub objective: f64,
    pub scores: Vec<f64>,
    pub q: Autocorrelation,
    pub gradient: Vec<f64>,
}

/// Coefficients of `H_eff = Σ_{u<v} c_uv Z_u Z_v` on the family's support:
/// `c_uv = Σᵢ (∂L/∂sᵢ)(Mᵢ,uv + Mᵢ,vu)`. Diagonal entries only add constants
/// because `Q_uu = 1`.
pub fn effective_coefficients(fam: &QuadraticFamily, h: &ZzOperator, dloss: &[f64]) -> Vec<f64> {
    h.pairs()
        .iter()
        .map(|&(u, v)| {
            fam.members()
                .iter()
                .zip(dloss)
                .map(|(m, g)| g * (m[(u, v)] + m[(v, u)]))
                .sum()
        })
        .collect()
}

/// Value and gradient of the smoothed loss at temperature `tau` (ignored by
/// the linear modes) with one forward and one adjoint pass.
pub fn objective_gradient(params: &AnsatzParams, fam: &QuadraticFamily, cost: &ZzOperator, tau: f64) -> Result<ObjectiveGradient> {
    let h = ZzOperator::from_family(fam);
    let fwd = forward_with_cap(params, cost, MAX_QUBITS)?;
    let q = fwd.autocorrelation();
    let eval = fam.evaluate(q.matrix())?;
    let (loss, dloss) = fam.surrogate(&eval.scores, tau)?;
    let coeffs = effective_coefficients(fam, &h, &dloss);
    let (_, gradient) = backward(&fwd, params, cost, &h, &coeffs)?;
    Ok(ObjectiveGradient {
        loss,
        objective: eval.objective,
        scores: eval.scores,
        q,
        gradient,
    })
}

/// Outcome of one training run. `params`, `objective`, `scores` and `q`
/// belong to the best evaluation seen.
#[derive(Debug, Clone)]
pub struct TrainReport {
    pub params: AnsatzParams,
    pub objective: f64,
    pub scores: Vec<f64>,
    pub q: Autocorrelation,
    /// Optimizer steps taken.
    pub iterations: usize,
    /// Objective at every evaluation, starting with the initial point.
    pub trace: Vec<f64>,
    /// Best objective so far at every evaluation.
    pub best_trace: Vec<f64>,
    /// Whether the stopping rule fired before the iteration budget ran out.
    pub stopped_early: bool,
    pub seed: u64,
}

/// Trains from the seeded small-angle initialisation.
pub fn train(fam: &QuadraticFamily, cost: &ZzOperator, p: usize, cfg: &TrainConfig) -> Result<TrainReport> {
    if p == 0 {
        return Err(Error::InvalidInput("the ansatz needs at least one layer".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let init = AnsatzParams::random(p, cost.n_vertices(), cost.len(), cfg.init_cap, &mut rng);
    train_from(fam, cost, init, cfg)
}

/// Adam on the smoothed loss from the given angles.
///
/// Evaluations happen at steps `0..=max_iters`; after evaluation `t ≥
/// patience` training stops if `best[t − patience] − best[t] < tolerance`,
/// with `best` the best loss so far.
pub fn train_from(fam: &QuadraticFamily, cost: &ZzOperator, init: AnsatzParams, cfg: &TrainConfig) -> Result<TrainReport> {
    cfg.validate()?;
    if fam.dim() != cost.n_vertices() {
        return Err(Error::DimensionMismatch {
            expected: fam.dim(),
            found: cost.n_vertices(),
        });
    }
    let h = ZzOperator::from_family(fam);
    let (p, n, pairs) = (init.layers(), init.n_vertices(), init.n_pairs());
    let mut flat = init.flatten();
    let mut adam = Adam::new(cfg.adam, flat.len());

    let mut best: Option<(f64, AnsatzParams, Vec<f64>, f64, Autocorrelation)> = None;
    let mut best_losses = Vec::new();
    let mut trace = Vec::new();
    let mut best_trace = Vec::new();
    let mut stopped_early = false;
    let mut steps = 0;

    for t in 0..=cfg.max_iters {
        let params = AnsatzParams::from_flat(p, n, pairs, &flat)?;
        let fwd = forward_with_cap(&params, cost, cfg.qubit_cap)?;
        let q = fwd.autocorrelation();
        let eval = fam.evaluate(q.matrix())?;
        let loss = fam.loss(eval.objective);
        if best.as_ref().is_none_or(|b| loss < b.0) {
            best = Some((loss, params.clone(), eval.scores.clone(), eval.objective, q));
        }
        let (best_loss, _, _, best_objective, _) = best.as_ref().expect("set above");
        best_losses.push(*best_loss);
        trace.push(eval.objective);
        best_trace.push(*best_objective);
        debug!("iter {t}: objective {:.6} best {:.6}", eval.objective, best_objective);

        if t >= cfg.patience && best_losses[t - cfg.patience] - best_losses[t] < cfg.tolerance {
            stopped_early = t < cfg.max_iters;
            break;
        }
        if t == cfg.max_iters {
            break;
        }
        let (_, dloss) = fam.surrogate(&eval.scores, cfg.schedule.at(t))?;
        let coeffs = effective_coefficients(fam, &h, &dloss);
        let (_, grad) = backward(&fwd, &params, cost, &h, &coeffs)?;
        adam.step(&mut flat, &grad);
        steps += 1;
    }

    let (_, params, scores, objective, q) = best.expect("at least one evaluation");
    Ok(TrainReport {
        params,
        objective,
        scores,
        q,
        iterations: steps,
        trace,
        best_trace,
        stopped_early,
        seed: cfg.seed,
    })
}

/// Independent runs over `seeds`; returns every report and the index of the
/// best one (first on ties).
pub fn train_seeds(
    fam: &QuadraticFamily,
    cost: &ZzOperator,
    p: usize,
    cfg: &TrainConfig,
    seeds: &[u64],
) -> Result<(Vec<TrainReport>, usize)> {
    if seeds.is_empty() {
        return Err(Error::InvalidInput("need at least one seed".into()));
    }
    let reports = seeds
        .iter()
        .map(|&seed| train(fam, cost, p, &TrainConfig { seed, ..cfg.clone() }))
        .collect::<Result<Vec<_>>>()?;
    let best = (0..reports.len())
        .min_by(|&a, &b| fam.loss(reports[a].objective).total_cmp(&fam.loss(reports[b].objective)))
        .expect("nonempty");
    Ok((reports, best))
}
