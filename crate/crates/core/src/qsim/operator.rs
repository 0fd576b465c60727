use std::collections::BTreeSet;

use crate::hypercore::{clique_expansion, Hypergraph};
use crate::objective::QuadraticFamily;
use crate::{Error, Result};

/// A list of vertex pairs `u < v` on which weighted `Z_u Z_v` sums act: the
/// cost graph of the ansatz, or the support of an effective Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct ZzOperator {
    n: usize,
    pairs: Vec<(usize, usize)>,
    /// `lower[k]` lists `(u, pair index)` for pairs `(u, k)` with `u < k`.
    lower: Vec<Vec<(usize, usize)>>,
}

impl ZzOperator {
    pub fn new(n: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut lower = vec![Vec::new(); n];
        let mut normalised = Vec::with_capacity(pairs.len());
        for (idx, (a, b)) in pairs.into_iter().enumerate() {
            let (u, v) = (a.min(b), a.max(b));
            if u == v || v >= n {
                return Err(Error::InvalidInput(format!("pair ({a}, {b}) is invalid for {n} vertices")));
            }
            if !seen.insert((u, v)) {
                return Err(Error::InvalidInput(format!("pair ({u}, {v}) repeated")));
            }
            lower[v].push((u, idx));
            normalised.push((u, v));
        }
        Ok(Self {
            n,
            pairs: normalised,
            lower,
        })
    }

    /// Unweighted clique expansion of `h`, in lexicographic order.
    pub fn from_hypergraph(h: &Hypergraph) -> Self {
        let g = clique_expansion(h);
        Self::new(h.n_vertices(), g.edges().iter().map(|e| (e.0, e.1)).collect())
            .expect("clique expansion pairs are valid")
    }

    /// Off-diagonal support of a family. For a single hypergraph this is its
    /// clique expansion; for a scaled pair it is the union of both.
    pub fn from_family(fam: &QuadraticFamily) -> Self {
        Self::new(fam.dim(), fam.support_pairs()).expect("support pairs are valid")
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `d(x) = Σ_p w_p x_u x_v` for every basis index `x`.
    ///
    /// Built by doubling: flipping spin `k` of an index below `2^k` changes
    /// the terms `(u, k)`, `u < k`, by `−2 w x_u` and the terms `(k, v)`,
    /// `v > k`, by `−2 w` since `x_v = +1` there.
    pub fn diagonal(&self, weights: &[f64]) -> Result<Vec<f64>> {
        self.diagonal_prefix(weights, self.n)
    }

    /// The first `2^bits` entries of [`ZzOperator::diagonal`], i.e. spins
    /// `bits..n` fixed at `+1`.
    pub(crate) fn diagonal_prefix(&self, weights: &[f64], bits: usize) -> Result<Vec<f64>> {
        if weights.len() != self.pairs.len() {
            return Err(Error::DimensionMismatch {
                expected: self.pairs.len(),
                found: weights.len(),
            });
        }
        let mut upper = vec![0.0; self.n];
        for (&(u, _), w) in self.pairs.iter().zip(weights) {
            upper[u] += w;
        }
        let mut d = vec![0.0; 1usize << bits];
        d[0] = weights.iter().sum();
        for k in 0..bits {
            let half = 1usize << k;
            let (lo, hi) = d[..2 * half].split_at_mut(half);
            let shift = 2.0 * upper[k];
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h = l - shift;
            }
            for &(u, idx) in &self.lower[k] {
                let delta = 2.0 * weights[idx];
                let stride = 1usize << u;
                for block in hi.chunks_exact_mut(2 * stride) {
                    let (plus, minus) = block.split_at_mut(stride);
                    plus.iter_mut().for_each(|v| *v -= delta);
                    minus.iter_mut().for_each(|v| *v += delta);
                }
            }
        }
        Ok(d)
    }
}
