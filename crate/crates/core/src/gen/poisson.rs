use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::hypercore::Hypergraph;
use crate::{Error, Result};

/// Random hypergraph with `m` edge draws whose sizes are
/// `min(n, 2 + Poisson(μ − 2))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoissonSpec {
    pub n_vertices: usize,
    pub n_edges: usize,
    pub mu: f64,
    pub seed: u64,
}

/// Rates above this would make inversion sampling slow and inaccurate.
pub const MAX_POISSON_RATE: f64 = 10.0;

impl PoissonSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_vertices < 2 {
            return Err(Error::InvalidInput("need at least two vertices".into()));
        }
        if self.n_edges == 0 {
            return Err(Error::InvalidInput("need at least one edge draw".into()));
        }
        if !(self.mu > 2.0) || self.mu - 2.0 > MAX_POISSON_RATE {
            return Err(Error::InvalidInput(format!(
                "rate μ = {} must satisfy 2 < μ ≤ {}",
                self.mu,
                2.0 + MAX_POISSON_RATE
            )));
        }
        Ok(())
    }
}

/// Poisson draw by inversion of the CDF.
pub fn sample_poisson<R: Rng>(rate: f64, rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let mut k = 0;
    let mut p = (-rate).exp();
    let mut cdf = p;
    while u > cdf && p > 0.0 {
        k += 1;
        p *= rate / k as f64;
        cdf += p;
    }
    k
}

/// `k` distinct vertices of `0..n` by a partial Fisher–Yates shuffle.
pub fn sample_vertices<R: Rng>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.random_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool
}

/// Draws `m` edges and merges repeated vertex sets, each merged edge
/// weighted by its multiplicity. Uses `ChaCha8Rng` seeded from `seed`.
pub fn poisson_hypergraph(spec: &PoissonSpec) -> Result<Hypergraph> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let edges: Vec<Vec<usize>> = (0..spec.n_edges)
        .map(|_| {
            let size = spec.n_vertices.min(sample_poisson(spec.mu - 2.0, &mut rng) + 2);
            sample_vertices(spec.n_vertices, size, &mut rng)
        })
        .collect();
    Hypergraph::unweighted(spec.n_vertices, edges)
}
