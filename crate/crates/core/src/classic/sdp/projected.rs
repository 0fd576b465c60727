use nalgebra::DMatrix;

use super::{finish, SdpBackend, SdpSolution};
use crate::classic::spectral::{project_psd, symmetrize};
use crate::objective::{QuadraticFamily, TemperatureSchedule};
use crate::{Error, Result};

/// First-order backend: projected gradient on the LogSumExp surrogate, with
/// the elliptope projection computed by Dykstra's alternating scheme between
/// the PSD cone and the unit-diagonal affine set.
#[derive(Debug, Clone)]
pub struct ProjectedGradient {
    pub max_iters: usize,
    pub dykstra_iters: usize,
    pub schedule: TemperatureSchedule,
}

impl Default for ProjectedGradient {
    fn default() -> Self {
        Self {
            max_iters: 3000,
            dykstra_iters: 30,
            schedule: TemperatureSchedule::default(),
        }
    }
}

/// Dykstra projection onto `{A ⪰ 0} ∩ {diag(A) = 𝟙}`. Returns the last PSD
/// iterate; callers rescale its diagonal.
pub fn project_elliptope(y: &DMatrix<f64>, iters: usize, tol: f64) -> DMatrix<f64> {
    let n = y.nrows();
    let mut x = symmetrize(y);
    let mut p = DMatrix::zeros(n, n);
    let mut q = DMatrix::zeros(n, n);
    let mut psd = x.clone();
    for _ in 0..iters.max(1) {
        psd = project_psd(&(&x + &p));
        p = &x + &p - &psd;
        let mut next = &psd + &q;
        for i in 0..n {
            next[(i, i)] = 1.0;
        }
        q = &psd + &q - &next;
        let change = (&next - &x).norm();
        x = next;
        if change <= tol {
            break;
        }
    }
    psd
}

impl SdpBackend for ProjectedGradient {
    fn name(&self) -> &'static str {
        "projected-gradient"
    }

    fn solve(&self, fam: &QuadraticFamily, tol: f64) -> Result<SdpSolution> {
        if !(tol > 0.0) {
            return Err(Error::InvalidInput(format!("tolerance {tol} must be positive")));
        }
        let n = fam.dim();
        let curvature = fam
            .members()
            .iter()
            .map(|m| m.norm_squared())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        let linear = fam.combined_matrix();

        let mut a = DMatrix::<f64>::identity(n, n);
        let mut change = f64::INFINITY;
        let mut iterations = 0;
        for iter in 0..self.max_iters {
            iterations = iter + 1;
            let (grad, step) = match &linear {
                Some(c) => (-c, 1.0 / c.norm().max(f64::MIN_POSITIVE)),
                None => {
                    let tau = self.schedule.at(iter);
                    let scores = fam.scores(&a)?;
                    let (_, weights) = fam.surrogate(&scores, tau)?;
                    let mut g = DMatrix::zeros(n, n);
                    for (m, w) in fam.members().iter().zip(&weights) {
                        g += m * *w;
                    }
                    (g, tau / curvature)
                }
            };
            let mut next = project_elliptope(&(&a - grad * step), self.dykstra_iters, tol * 1e-2);
            let d: Vec<f64> = (0..n).map(|i| next[(i, i)].max(1e-300).sqrt()).collect();
            next = DMatrix::from_fn(n, n, |i, j| next[(i, j)] / (d[i] * d[j]));
            change = (&next - &a).norm();
            a = next;
            let annealed = linear.is_some() || self.schedule.at(iter) <= self.schedule.floor;
            if annealed && change <= tol {
                break;
            }
        }
        let converged = change <= tol;
        finish(fam, &a, iterations, (0.0, change, f64::NAN), converged)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_of_feasible_point_is_identity() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.3, 0.3, 1.0]);
        assert!((project_elliptope(&a, 50, 1e-12) - &a).amax() < 1e-10);
    }

    #[test]
    fn projection_lands_in_elliptope() {
        let y = DMatrix::from_row_slice(3, 3, &[2.0, 1.5, -1.5, 1.5, 0.2, 1.5, -1.5, 1.5, 1.0]);
        let p = project_elliptope(&y, 500, 1e-12);
        for i in 0..3 {
            assert!((p[(i, i)] - 1.0).abs() < 1e-6);
        }
        let low = nalgebra::SymmetricEigen::new(p).eigenvalues.min();
        assert!(low > -1e-9);
    }
}
