use log::warn;
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

const POWER_ITER_CAP: usize = 200_000;

/// Eigenvalues at or below this count as zero when factoring.
pub const RANK_TOL: f64 = 1e-9;

/// Largest eigenvalue of a symmetric matrix by power iteration with a
/// Rayleigh quotient estimate.
///
/// The matrix is shifted by a Gershgorin bound so the iteration sees a PSD
/// spectrum; the start vector is a fixed pseudo-random one. Iteration stops
/// once `‖Mv − ρv‖ ≤ tol · scale`. The zero matrix returns 0.
pub fn lambda_max(m: &DMatrix<f64>, tol: f64) -> f64 {
    let n = m.nrows();
    let scale = m.amax();
    if n == 0 || scale == 0.0 {
        return 0.0;
    }
    let gershgorin_low = (0..n)
        .map(|i| {
            let off: f64 = (0..n).filter(|&j| j != i).map(|j| m[(i, j)].abs()).sum();
            m[(i, i)] - off
        })
        .fold(f64::INFINITY, f64::min);
    let shift = (-gershgorin_low).max(0.0);

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut v = DVector::from_fn(n, |_, _| rng.random::<f64>() + 0.5);
    v.normalize_mut();
    let mut rho = 0.0;
    for _ in 0..POWER_ITER_CAP {
        let mv = m * &v;
        rho = v.dot(&mv);
        let residual = (&mv - &v * rho).norm();
        if residual <= tol * scale {
            return rho;
        }
        let mut next = mv + &v * shift;
        let norm = next.norm();
        if norm == 0.0 {
            return rho;
        }
        next /= norm;
        v = next;
    }
    warn!("power iteration hit its cap of {POWER_ITER_CAP} steps");
    rho
}

/// Symmetric eigendecomposition with eigenvalues sorted descending.
pub fn sorted_eigen(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m.clone());
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = DVector::from_fn(n, |i, _| eig.eigenvalues[order[i]]);
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped).
pub fn project_psd(m: &DMatrix<f64>) -> DMatrix<f64> {
    let (values, vectors) = sorted_eigen(&symmetrize(m));
    let clipped = values.map(|v| v.max(0.0));
    &vectors * DMatrix::from_diagonal(&clipped) * vectors.transpose()
}

pub fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

/// A point of the elliptope `{A ⪰ 0, diag(A) = 𝟙}` with a factor `A = BBᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ElliptopePoint {
    a: DMatrix<f64>,
    factor: DMatrix<f64>,
}

impl ElliptopePoint {
    /// Checks the diagonal (1e-8) and smallest eigenvalue (≥ −1e-8), then
    /// factors by eigendecomposition with negative eigenvalues clipped. `B`
    /// has one column per eigenvalue above [`RANK_TOL`].
    pub fn new(a: DMatrix<f64>) -> Result<Self> {
        let n = a.nrows();
        if a.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: a.ncols(),
            });
        }
        if let Some(i) = (0..n).find(|&i| (a[(i, i)] - 1.0).abs() > 1e-8) {
            return Err(Error::InvalidInput(format!(
                "elliptope diagonal entry {i} is {}",
                a[(i, i)]
            )));
        }
        let a = symmetrize(&a);
        let (values, vectors) = sorted_eigen(&a);
        if n > 0 && values[n - 1] < -1e-8 {
            return Err(Error::InvalidInput(format!(
                "matrix is not PSD: smallest eigenvalue {}",
                values[n - 1]
            )));
        }
        let rank = values.iter().filter(|&&v| v > RANK_TOL).count();
        let factor = DMatrix::from_fn(n, rank, |r, c| vectors[(r, c)] * values[c].sqrt());
        Ok(Self { a, factor })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn factor(&self) -> &DMatrix<f64> {
        &self.factor
    }

    pub fn rank(&self) -> usize {
        self.factor.ncols()
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }
}
