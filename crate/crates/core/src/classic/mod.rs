//! Classical baselines: the elliptope relaxation with hyperplane rounding,
//! the exact minimax solver with its certificate, and exhaustive oracles.

mod brute;
mod game;
mod rounding;
pub mod sdp;
mod simplex;
mod spectral;

pub use brute::{
    brute_force_max_quadratic, brute_force_min_quadratic, extremal_quadratic, BRUTE_FORCE_CAP, BRUTE_FORCE_WARN,
};
pub use game::{
    best_response, exact_minimax, parse_certificate, CertificateRecord, GameCertificate, GameConfig, EXACT_CAP,
};
pub use rounding::{rounding_autocorrelation, sample_hyperplane};
pub use sdp::{solve_sdp, SdpBackend, SdpSolution};
pub use simplex::{solve_matrix_game, GameSolution};
pub use spectral::{lambda_max, project_psd, sorted_eigen, ElliptopePoint, RANK_TOL};

use crate::objective::{Aggregation, QuadraticFamily, SpinDistribution};
use crate::{Error, Result};

/// Optimal distribution of a family, certified where a game was solved.
#[derive(Debug, Clone)]
pub struct ExactSolution {
    pub distribution: SpinDistribution,
    pub objective: f64,
    pub certificate: Option<GameCertificate>,
}

/// Exact optimum for any mode. Linear modes are optimal at a point mass, so
/// they reduce to exhaustive maximisation of `Σ cᵢMᵢ`.
pub fn solve_exact(fam: &QuadraticFamily, cfg: &GameConfig) -> Result<ExactSolution> {
    match fam.mode() {
        Aggregation::Minimax | Aggregation::Maximin => {
            let cert = exact_minimax(fam, cfg)?;
            Ok(ExactSolution {
                distribution: cert.primal.clone(),
                objective: cert.primal_value,
                certificate: Some(cert),
            })
        }
        Aggregation::Sum | Aggregation::Pareto { .. } => {
            if fam.dim() > EXACT_CAP {
                return Err(Error::Resource(format!(
                    "exact solving is limited to {EXACT_CAP} vertices, got {}",
                    fam.dim()
                )));
            }
            let c = fam.combined_matrix().expect("linear mode");
            let (value, x) = extremal_quadratic(&c, true, EXACT_CAP)?;
            Ok(ExactSolution {
                distribution: SpinDistribution::point_mass(x)?,
                objective: value,
                certificate: None,
            })
        }
    }
}
