use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::spins::{check_spins, from_bitstring, to_bitstring};
use crate::{Error, Result};

/// Autocorrelation `Q = E[x xᵀ]` of a random spin vector: symmetric, unit
/// diagonal, entries in `[−1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Autocorrelation(DMatrix<f64>);

const DIAG_TOL: f64 = 1e-9;

impl Autocorrelation {
    /// Validates shape, symmetry, unit diagonal and entry range (1e-9 slack).
    pub fn new(q: DMatrix<f64>) -> Result<Self> {
        let n = q.nrows();
        if q.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: q.ncols(),
            });
        }
        for i in 0..n {
            if (q[(i, i)] - 1.0).abs() > DIAG_TOL {
                return Err(Error::InvalidInput(format!(
                    "autocorrelation diagonal entry {i} is {}",
                    q[(i, i)]
                )));
            }
            for j in 0..n {
                let v = q[(i, j)];
                if !v.is_finite() || v.abs() > 1.0 + DIAG_TOL {
                    return Err(Error::InvalidInput(format!(
                        "autocorrelation entry ({i}, {j}) = {v} outside [-1, 1]"
                    )));
                }
                if (v - q[(j, i)]).abs() > DIAG_TOL {
                    return Err(Error::InvalidInput(format!(
                        "autocorrelation is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self(q))
    }

    /// The uncorrelated distribution, `Q = I`.
    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }
}

impl AsRef<DMatrix<f64>> for Autocorrelation {
    fn as_ref(&self) -> &DMatrix<f64> {
        &self.0
    }
}

/// A finitely supported distribution over spin vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinDistribution {
    n: usize,
    support: Vec<(Vec<i8>, f64)>,
}

impl SpinDistribution {
    /// Validates spins, nonnegative probabilities summing to one (1e-9) and
    /// distinct support. Zero-probability entries are dropped.
    pub fn new(n: usize, support: Vec<(Vec<i8>, f64)>) -> Result<Self> {
        let mut total = 0.0;
        for (x, p) in &support {
            check_spins(x, n)?;
            if !p.is_finite() || *p < 0.0 {
                return Err(Error::InvalidInput(format!("probability {p} is invalid")));
            }
            total += p;
        }
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        let mut keys: Vec<&Vec<i8>> = support.iter().map(|(x, _)| x).collect();
        keys.sort();
        if keys.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("support vectors are not distinct".into()));
        }
        let support = support.into_iter().filter(|(_, p)| *p > 0.0).collect();
        Ok(Self { n, support })
    }

    pub fn point_mass(x: Vec<i8>) -> Result<Self> {
        let n = x.len();
        Self::new(n, vec![(x, 1.0)])
    }

    /// Uniform over the given distinct vectors.
    pub fn uniform(n: usize, xs: Vec<Vec<i8>>) -> Result<Self> {
        let k = xs.len() as f64;
        Self::new(n, xs.into_iter().map(|x| (x, 1.0 / k)).collect())
    }

    /// Empirical distribution of samples; the support is sorted by bitstring.
    pub fn from_samples(n: usize, samples: &[Vec<i8>]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidInput("no samples".into()));
        }
        let mut counts: std::collections::BTreeMap<String, usize> = Default::default();
        for s in samples {
            check_spins(s, n)?;
            *counts.entry(to_bitstring(s)).or_default() += 1;
        }
        let total = samples.len() as f64;
        let support = counts
            .into_iter()
            .map(|(bits, c)| Ok((from_bitstring(&bits)?, c as f64 / total)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, support)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &[(Vec<i8>, f64)] {
        &self.support
    }

    /// The global spin flip `x ↦ −x` of every support vector.
    pub fn flipped(&self) -> Self {
        Self {
            n: self.n,
            support: self
                .support
                .iter()
                .map(|(x, p)| (crate::spins::flipped(x), *p))
                .collect(),
        }
    }

    pub fn to_records(&self) -> Vec<SupportRecord> {
        self.support
            .iter()
            .map(|(x, p)| SupportRecord {
                x: to_bitstring(x),
                p: *p,
            })
            .collect()
    }
}

/// Serialised support entry: bitstring (`0` is +1, `1` is −1, character `v`
/// for vertex `v`) and probability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportRecord {
    pub x: String,
    pub p: f64,
}

/// `Q = Σ_s q_s s sᵀ`, with the diagonal set to exactly one.
pub fn autocorrelation_of(d: &SpinDistribution) -> Autocorrelation {
    let n = d.n();
    let mut q = DMatrix::zeros(n, n);
    for (x, p) in d.support() {
        for i in 0..n {
            for j in (i + 1)..n {
                q[(i, j)] += p * f64::from(x[i] * x[j]);
            }
        }
    }
    for i in 0..n {
        q[(i, i)] = 1.0;
        for j in (i + 1)..n {
            let v = q[(i, j)].clamp(-1.0, 1.0);
            q[(i, j)] = v;
            q[(j, i)] = v;
        }
    }
    Autocorrelation(q)
}
