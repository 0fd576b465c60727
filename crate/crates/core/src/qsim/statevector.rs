use num_complex::Complex64;

use crate::objective::Autocorrelation;
use crate::qsim::kernels::{self, walsh_hadamard};
use crate::qsim::ZzOperator;
use crate::{Error, Result};

/// Default qubit cap: 2²⁶ complex doubles is 1 GiB.
pub const MAX_QUBITS: usize = 26;

/// Dense `2ⁿ` amplitude vector. Bit `v` of a basis index is vertex `v`'s
/// spin, with bit 0 meaning `+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|+⟩^⊗n` under the default cap.
    pub fn plus(n: usize) -> Result<Self> {
        Self::plus_with_cap(n, MAX_QUBITS)
    }

    pub fn plus_with_cap(n: usize, cap: usize) -> Result<Self> {
        check_size(n, cap)?;
        let dim = 1usize << n;
        let a = (dim as f64).sqrt().recip();
        Ok(Self {
            n,
            amps: vec![Complex64::new(a, 0.0); dim],
        })
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_size(n, MAX_QUBITS)?;
        if index >= 1 << n {
            return Err(Error::InvalidInput(format!("basis index {index} out of range")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    /// Wraps amplitudes after checking length `2ⁿ` and unit norm (1e-9).
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_size(n, MAX_QUBITS)?;
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: amps.len(),
            });
        }
        let s = Self { n, amps };
        if (s.norm_sqr() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!("state has squared norm {}", s.norm_sqr())));
        }
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Multiplies amplitude `x` by `factors[x]`.
    pub fn apply_diagonal(&mut self, factors: &[Complex64]) {
        for (a, f) in self.amps.iter_mut().zip(factors) {
            *a *= f;
        }
    }

    /// Multiplies amplitude `x` by `conj(factors[x])`.
    pub fn apply_diagonal_adjoint(&mut self, factors: &[Complex64]) {
        for (a, f) in self.amps.iter_mut().zip(factors) {
            *a *= f.conj();
        }
    }

    /// `Π exp(−iθ_{uv} Z_u Z_v)` over the pairs of `cost`.
    pub fn apply_cost_layer(&mut self, gammas: &[f64], cost: &ZzOperator) -> Result<()> {
        if cost.n_vertices() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: cost.n_vertices(),
            });
        }
        let factors = kernels::phase_factors(&cost.diagonal(gammas)?);
        self.apply_diagonal(&factors);
        Ok(())
    }

    /// `Π_u exp(−iβ_u X_u)`.
    pub fn apply_mixer_layer(&mut self, betas: &[f64]) -> Result<()> {
        if betas.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: betas.len(),
            });
        }
        for (u, &beta) in betas.iter().enumerate() {
            kernels::rx(&mut self.amps, u, beta, 1.0);
        }
        Ok(())
    }

    /// `exp(−iβX_u)`: `(a, b) ↦ (c·a − i·s·b, c·b − i·s·a)` on the pair that
    /// differs in bit `u`, with `c = cos β`, `s = sin β`.
    pub fn apply_rx(&mut self, u: usize, beta: f64) {
        kernels::rx(&mut self.amps, u, beta, 1.0);
    }

    /// `⟨Z_u Z_v⟩` for each requested pair.
    pub fn zz_expectations(&self, pairs: &[(usize, usize)]) -> Result<Vec<f64>> {
        if let Some(&(u, v)) = pairs.iter().find(|&&(u, v)| u >= self.n || v >= self.n) {
            return Err(Error::InvalidInput(format!("pair ({u}, {v}) out of range")));
        }
        let spectrum = walsh_hadamard(self.probabilities());
        Ok(pairs.iter().map(|&(u, v)| pair_coefficient(&spectrum, u, v)).collect())
    }

    /// Full autocorrelation `Q_uv = ⟨Z_u Z_v⟩`.
    pub fn autocorrelation(&self) -> Autocorrelation {
        let spectrum = walsh_hadamard(self.probabilities());
        let n = self.n;
        let q = nalgebra::DMatrix::from_fn(n, n, |u, v| {
            if u == v {
                1.0
            } else {
                pair_coefficient(&spectrum, u, v).clamp(-1.0, 1.0)
            }
        });
        Autocorrelation::new(q).expect("statevector correlations are valid")
    }
}

pub(crate) fn check_size(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("need at least one qubit".into()));
    }
    if n > cap {
        return Err(Error::Resource(format!(
            "{n} qubits exceed the statevector cap of {cap}"
        )));
    }
    Ok(())
}

fn pair_coefficient(spectrum: &[f64], u: usize, v: usize) -> f64 {
    spectrum[(1 << u) | (1 << v)]
}
