use std::f64::consts::FRAC_2_PI;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::objective::{Autocorrelation, SpinDistribution};
use crate::{Error, Result};

/// Entries beyond `1 + RANGE_TOL` in magnitude are rejected.
pub const RANGE_TOL: f64 = 1e-6;

/// Closed-form hyperplane-rounding autocorrelation `Q = (2/π) arcsin(A)`.
pub fn rounding_autocorrelation(a: &DMatrix<f64>) -> Result<Autocorrelation> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.ncols(),
        });
    }
    let mut q = DMatrix::identity(n, n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let v = a[(i, j)];
            if !v.is_finite() || v.abs() > 1.0 + RANGE_TOL {
                return Err(Error::InvalidInput(format!(
                    "entry ({i}, {j}) = {v} is outside [-1, 1]"
                )));
            }
            q[(i, j)] = FRAC_2_PI * v.clamp(-1.0, 1.0).asin();
        }
    }
    Autocorrelation::new(q)
}

/// Empirical distribution of `sign(BY)` over `n_samples` Gaussian draws,
/// with `sign(0) = +1`.
pub fn sample_hyperplane(b: &DMatrix<f64>, n_samples: usize, seed: u64) -> Result<SpinDistribution> {
    if n_samples == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let n = b.nrows();
    let r = b.ncols();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut y = vec![0.0; r];
    let samples: Vec<Vec<i8>> = (0..n_samples)
        .map(|_| {
            for yi in y.iter_mut() {
                *yi = StandardNormal.sample(&mut rng);
            }
            (0..n)
                .map(|v| {
                    let dot: f64 = (0..r).map(|k| b[(v, k)] * y[k]).sum();
                    if dot >= 0.0 {
                        1
                    } else {
                        -1
                    }
                })
                .collect()
        })
        .collect();
    SpinDistribution::from_samples(n, &samples)
}
