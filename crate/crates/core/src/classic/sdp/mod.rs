//! Elliptope relaxations of quadratic families.
//!
//! Minimax: `min t` s.t. `⟨Mᵢ, A⟩ ≤ t`; maximin: `max t` s.t. `⟨Mᵢ, A⟩ ≥ t`;
//! linear modes: `max ⟨Σ cᵢMᵢ, A⟩`; always over `A ⪰ 0, diag(A) = 𝟙`.

mod interior;
mod projected;

pub use interior::InteriorPoint;
pub use projected::ProjectedGradient;

use nalgebra::DMatrix;

use crate::classic::spectral::symmetrize;
use crate::classic::ElliptopePoint;
use crate::objective::QuadraticFamily;
use crate::{Error, Result};

/// Outcome of a relaxation solve. `value` is the family objective evaluated
/// at the returned point.
#[derive(Debug, Clone)]
pub struct SdpSolution {
    pub point: ElliptopePoint,
    pub value: f64,
    pub iterations: usize,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub gap: f64,
    pub converged: bool,
}

/// A relaxation solver over the elliptope.
pub trait SdpBackend {
    fn name(&self) -> &'static str;

    fn solve(&self, fam: &QuadraticFamily, tol: f64) -> Result<SdpSolution>;
}

/// Solves with the default interior-point backend.
pub fn solve_sdp(fam: &QuadraticFamily, tol: f64) -> Result<SdpSolution> {
    InteriorPoint::default().solve(fam, tol)
}

/// Rescales to an exact unit diagonal (`D^{-1/2} A D^{-1/2}`, which keeps
/// PSD) and symmetrises.
pub(crate) fn normalise_diagonal(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let a = symmetrize(a);
    let n = a.nrows();
    let d: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    if let Some(&bad) = d.iter().find(|&&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "relaxation produced diagonal entry {bad}"
        )));
    }
    let mut out = DMatrix::from_fn(n, n, |i, j| a[(i, j)] / (d[i] * d[j]).sqrt());
    for i in 0..n {
        out[(i, i)] = 1.0;
        for j in 0..n {
            out[(i, j)] = out[(i, j)].clamp(-1.0, 1.0);
        }
    }
    Ok(out)
}

pub(crate) fn finish(
    fam: &QuadraticFamily,
    a: &DMatrix<f64>,
    iterations: usize,
    residuals: (f64, f64, f64),
    converged: bool,
) -> Result<SdpSolution> {
    let a = normalise_diagonal(a)?;
    let value = fam.evaluate(&a)?.objective;
    Ok(SdpSolution {
        point: ElliptopePoint::new(a)?,
        value,
        iterations,
        primal_residual: residuals.0,
        dual_residual: residuals.1,
        gap: residuals.2,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::{uniform_incidence, Graph};
    use crate::objective::Aggregation;

    fn cycle(n: usize) -> QuadraticFamily {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let h = Graph::unweighted(n, &edges).unwrap().to_hypergraph().unwrap();
        QuadraticFamily::total_variance(&h, &uniform_incidence(&h)).unwrap()
    }

    #[test]
    fn single_edge_anti_aligns() {
        let h = Graph::unweighted(2, &[(0, 1)]).unwrap().to_hypergraph().unwrap();
        let fam = QuadraticFamily::total_variance(&h, &uniform_incidence(&h)).unwrap();
        let sol = solve_sdp(&fam, 1e-9).unwrap();
        assert!((sol.point.matrix()[(0, 1)] + 1.0).abs() < 1e-6);
        assert!((sol.value - 1.0).abs() < 1e-6);
    }

    #[test]
    fn five_cycle_value() {
        let sol = solve_sdp(&cycle(5), 1e-10).unwrap();
        let expected = 5.0 * (1.0 - (4.0 * std::f64::consts::PI / 5.0).cos()) / 2.0;
        assert!((sol.value - expected).abs() < 1e-7, "{} vs {expected}", sol.value);
    }

    #[test]
    fn constant_objective_is_feasible() {
        let fam = QuadraticFamily::new(
            vec![(DMatrix::identity(3, 3), 1.0), (DMatrix::identity(3, 3), 1.0)],
            Aggregation::Minimax,
        )
        .unwrap();
        let sol = solve_sdp(&fam, 1e-9).unwrap();
        assert!((sol.value - 3.0).abs() < 1e-9);
    }

    #[test]
    fn backends_agree_on_small_minimax() {
        let h = crate::hypercore::Hypergraph::unweighted(4, vec![vec![0, 1, 2], vec![1, 2, 3], vec![0, 3]]).unwrap();
        let fam = QuadraticFamily::greatest_expected_imbalance(&h, &uniform_incidence(&h)).unwrap();
        let ipm = InteriorPoint::default().solve(&fam, 1e-9).unwrap();
        let pg = ProjectedGradient::default().solve(&fam, 1e-6).unwrap();
        assert!(ipm.converged);
        assert!((ipm.value - pg.value).abs() < 5e-3, "{} vs {}", ipm.value, pg.value);
        assert!(pg.value >= ipm.value - 1e-7);
    }
}
