use nalgebra::DMatrix;

use crate::hypercore::{Hypergraph, StochasticIncidence};

/// Imbalance `𝓜_e = p_e p_eᵀ` and variance `𝓥_e = diag(p_e) − 𝓜_e` of one
/// edge, restricted to the edge's vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeQuadratics {
    support: Vec<usize>,
    imbalance: DMatrix<f64>,
    variance: DMatrix<f64>,
}

impl EdgeQuadratics {
    pub fn new(p: &StochasticIncidence, e: usize) -> Self {
        let column = p.column(e);
        let k = column.len();
        let support: Vec<usize> = column.iter().map(|c| c.0).collect();
        let imbalance = DMatrix::from_fn(k, k, |i, j| column[i].1 * column[j].1);
        let mut variance = -imbalance.clone();
        for (i, &(_, pv)) in column.iter().enumerate() {
            variance[(i, i)] += pv;
        }
        Self {
            support,
            imbalance,
            variance,
        }
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn imbalance(&self) -> &DMatrix<f64> {
        &self.imbalance
    }

    pub fn variance(&self) -> &DMatrix<f64> {
        &self.variance
    }

    pub fn imbalance_dense(&self, n: usize) -> DMatrix<f64> {
        embed(&self.imbalance, &self.support, n)
    }

    pub fn variance_dense(&self, n: usize) -> DMatrix<f64> {
        embed(&self.variance, &self.support, n)
    }
}

fn embed(local: &DMatrix<f64>, support: &[usize], n: usize) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(n, n);
    for (i, &u) in support.iter().enumerate() {
        for (j, &v) in support.iter().enumerate() {
            out[(u, v)] = local[(i, j)];
        }
    }
    out
}

/// Per-edge quadratics for every edge of `p`.
pub fn edge_quadratics(p: &StochasticIncidence) -> Vec<EdgeQuadratics> {
    (0..p.n_edges()).map(|e| EdgeQuadratics::new(p, e)).collect()
}

/// Hypergraph imbalance `𝓜 = P diag(w) Pᵀ` and variance `𝓥 = diag(Pw) − 𝓜`.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateQuadratics {
    pub imbalance: DMatrix<f64>,
    pub variance: DMatrix<f64>,
}

impl AggregateQuadratics {
    pub fn new(h: &Hypergraph, p: &StochasticIncidence) -> Self {
        let n = h.n_vertices();
        let mut imbalance = DMatrix::zeros(n, n);
        for e in 0..p.n_edges() {
            let w = h.weight(e);
            let column = p.column(e);
            for &(u, pu) in column {
                for &(v, pv) in column {
                    imbalance[(u, v)] += w * pu * pv;
                }
            }
        }
        let degrees = p.weighted_degrees(h.weights());
        let mut variance = -imbalance.clone();
        for (v, d) in degrees.into_iter().enumerate() {
            variance[(v, v)] += d;
        }
        Self {
            imbalance,
            variance,
        }
    }
}
