use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::objective::Autocorrelation;
use crate::qsim::statevector::check_size;
use crate::qsim::{kernels, symmetric};
use crate::qsim::{Statevector, ZzOperator};
use crate::{Error, Result};

/// Multi-angle QAOA angles: `betas[l][u]` for the mixer on vertex `u` and
/// `gammas[l][e]` for cost pair `e`, in layer `l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnsatzParams {
    pub betas: Vec<Vec<f64>>,
    pub gammas: Vec<Vec<f64>>,
}

impl AnsatzParams {
    /// Checks `p ≥ 1`, rectangular shapes and finite angles.
    pub fn new(betas: Vec<Vec<f64>>, gammas: Vec<Vec<f64>>) -> Result<Self> {
        if betas.is_empty() || betas.len() != gammas.len() {
            return Err(Error::InvalidInput(format!(
                "need p ≥ 1 layers of both angle kinds, got {} and {}",
                betas.len(),
                gammas.len()
            )));
        }
        let n = betas[0].len();
        let m = gammas[0].len();
        if betas.iter().any(|b| b.len() != n) || gammas.iter().any(|g| g.len() != m) {
            return Err(Error::InvalidInput("angle layers have unequal lengths".into()));
        }
        if betas.iter().chain(&gammas).flatten().any(|a| !a.is_finite()) {
            return Err(Error::InvalidInput("angles must be finite".into()));
        }
        Ok(Self { betas, gammas })
    }

    pub fn zeros(p: usize, n: usize, n_pairs: usize) -> Self {
        Self {
            betas: vec![vec![0.0; n]; p],
            gammas: vec![vec![0.0; n_pairs]; p],
        }
    }

    /// Independent uniform draws in `[−cap, cap]`, layer by layer, cost
    /// angles before mixer angles.
    pub fn random<R: Rng>(p: usize, n: usize, n_pairs: usize, cap: f64, rng: &mut R) -> Self {
        let mut params = Self::zeros(p, n, n_pairs);
        for l in 0..p {
            for g in params.gammas[l].iter_mut() {
                *g = rng.random_range(-cap..=cap);
            }
            for b in params.betas[l].iter_mut() {
                *b = rng.random_range(-cap..=cap);
            }
        }
        params
    }

    pub fn layers(&self) -> usize {
        self.betas.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.betas[0].len()
    }

    pub fn n_pairs(&self) -> usize {
        self.gammas[0].len()
    }

    pub fn n_params(&self) -> usize {
        self.layers() * (self.n_vertices() + self.n_pairs())
    }

    /// Layer-major flat vector: for each layer its cost angles, then its
    /// mixer angles.
    pub fn flatten(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n_params());
        for l in 0..self.layers() {
            out.extend_from_slice(&self.gammas[l]);
            out.extend_from_slice(&self.betas[l]);
        }
        out
    }

    pub fn from_flat(p: usize, n: usize, n_pairs: usize, flat: &[f64]) -> Result<Self> {
        let width = n + n_pairs;
        if flat.len() != p * width {
            return Err(Error::DimensionMismatch {
                expected: p * width,
                found: flat.len(),
            });
        }
        let mut params = Self::zeros(p, n, n_pairs);
        for (l, chunk) in flat.chunks_exact(width).enumerate() {
            params.gammas[l].copy_from_slice(&chunk[..n_pairs]);
            params.betas[l].copy_from_slice(&chunk[n_pairs..]);
        }
        Ok(params)
    }

    /// Appends zero layers up to `p`. Zero layers act as the identity, so
    /// the state is unchanged.
    pub fn padded(&self, p: usize) -> Result<Self> {
        if p < self.layers() {
            return Err(Error::InvalidInput(format!(
                "cannot pad {} layers down to {p}",
                self.layers()
            )));
        }
        let mut out = self.clone();
        out.betas.resize(p, vec![0.0; self.n_vertices()]);
        out.gammas.resize(p, vec![0.0; self.n_pairs()]);
        Ok(out)
    }

    fn check(&self, cost: &ZzOperator) -> Result<()> {
        if self.n_vertices() != cost.n_vertices() || self.n_pairs() != cost.len() {
            return Err(Error::InvalidInput(format!(
                "parameters shaped for {} vertices and {} pairs, cost graph has {} and {}",
                self.n_vertices(),
                self.n_pairs(),
                cost.n_vertices(),
                cost.len()
            )));
        }
        Ok(())
    }
}

/// Output of the ansatz in flip-symmetric storage (the `2ⁿ⁻¹` amplitudes
/// whose top bit is clear), with each layer's cost phase factors kept for
/// the backward pass.
#[derive(Debug, Clone)]
pub struct ForwardPass {
    pub(crate) n: usize,
    pub(crate) half: Vec<Complex64>,
    pub(crate) cost_factors: Vec<Vec<Complex64>>,
}

impl ForwardPass {
    /// The full output statevector.
    pub fn state(&self) -> Statevector {
        Statevector::from_amplitudes(self.n, symmetric::expand(&self.half)).expect("unitary evolution keeps the norm")
    }

    pub fn autocorrelation(&self) -> Autocorrelation {
        symmetric::autocorrelation(&self.half, self.n)
    }
}

/// `|+⟩^⊗n`, then for each layer the cost layer followed by the mixer.
pub fn run_ansatz(params: &AnsatzParams, cost: &ZzOperator) -> Result<Statevector> {
    forward_with_cap(params, cost, crate::qsim::MAX_QUBITS).map(|f| f.state())
}

pub fn forward_with_cap(params: &AnsatzParams, cost: &ZzOperator, cap: usize) -> Result<ForwardPass> {
    params.check(cost)?;
    let n = cost.n_vertices();
    check_size(n, cap)?;
    let a = ((1usize << n) as f64).sqrt().recip();
    let mut half = vec![Complex64::new(a, 0.0); 1 << (n - 1)];
    let mut factors = Vec::with_capacity(params.layers());
    for l in 0..params.layers() {
        let f = kernels::phase_factors(&cost.diagonal_prefix(&params.gammas[l], n - 1)?);
        for (x, fx) in half.iter_mut().zip(&f) {
            *x *= fx;
        }
        symmetric::mixer(&mut half, &params.betas[l]);
        factors.push(f);
    }
    Ok(ForwardPass {
        n,
        half,
        cost_factors: factors,
    })
}
