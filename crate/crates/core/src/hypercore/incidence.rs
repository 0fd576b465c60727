use crate::hypercore::Hypergraph;
use crate::spins::check_spins;
use crate::{Error, Result};

/// Column-stochastic vertex-by-edge matrix `P`, stored sparsely by column.
///
/// Column `e` holds `(v, P_ve)` for the vertices of edge `e` in ascending
/// vertex order. Entries are strictly positive and sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticIncidence {
    n_vertices: usize,
    columns: Vec<Vec<(usize, f64)>>,
}

/// Uniform edge contributions: `P_ve = 1/|e|` for `v ∈ e`.
pub fn uniform_incidence(h: &Hypergraph) -> StochasticIncidence {
    let columns = h
        .edges()
        .iter()
        .map(|edge| {
            let share = 1.0 / edge.len() as f64;
            edge.iter().map(|&v| (v, share)).collect()
        })
        .collect();
    StochasticIncidence {
        n_vertices: h.n_vertices(),
        columns,
    }
}

impl StochasticIncidence {
    /// Builds `P` from positive per-vertex shares aligned with each edge's
    /// sorted vertex list. Shares are normalised so every column sums to one.
    pub fn from_shares(h: &Hypergraph, shares: &[Vec<f64>]) -> Result<Self> {
        if shares.len() != h.n_edges() {
            return Err(Error::DimensionMismatch {
                expected: h.n_edges(),
                found: shares.len(),
            });
        }
        let mut columns = Vec::with_capacity(h.n_edges());
        for (e, (edge, raw)) in h.edges().iter().zip(shares).enumerate() {
            if raw.len() != edge.len() {
                return Err(Error::InvalidInput(format!(
                    "edge {e} has {} vertices but {} shares",
                    edge.len(),
                    raw.len()
                )));
            }
            if raw.iter().any(|&s| !s.is_finite() || s <= 0.0) {
                return Err(Error::InvalidInput(format!(
                    "edge {e} has a non-positive or non-finite share"
                )));
            }
            let total: f64 = raw.iter().sum();
            columns.push(edge.iter().zip(raw).map(|(&v, &s)| (v, s / total)).collect());
        }
        Ok(Self {
            n_vertices: h.n_vertices(),
            columns,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, e: usize) -> &[(usize, f64)] {
        &self.columns[e]
    }

    /// Dense copy of column `e`.
    pub fn dense_column(&self, e: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.n_vertices];
        for &(v, p) in &self.columns[e] {
            out[v] = p;
        }
        out
    }

    /// Weighted mean `p_eᵀ x` of the spins on edge `e`.
    pub fn edge_mean(&self, x: &[i8], e: usize) -> Result<f64> {
        check_spins(x, self.n_vertices)?;
        let column = self.columns.get(e).ok_or(Error::DimensionMismatch {
            expected: self.columns.len(),
            found: e,
        })?;
        Ok(column.iter().map(|&(v, p)| p * f64::from(x[v])).sum())
    }

    /// `P w`, the weighted vertex degrees.
    pub fn weighted_degrees(&self, weights: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n_vertices];
        for (column, &w) in self.columns.iter().zip(weights) {
            for &(v, p) in column {
                out[v] += p * w;
            }
        }
        out
    }
}

/// Edge imbalance `(p_eᵀ x)²`.
pub fn edge_imbalance(x: &[i8], e: usize, p: &StochasticIncidence) -> Result<f64> {
    let mean = p.edge_mean(x, e)?;
    Ok(mean * mean)
}

/// Edge variance `Σ_v P_ve (x_v − p_eᵀ x)²`.
pub fn edge_variance(x: &[i8], e: usize, p: &StochasticIncidence) -> Result<f64> {
    let mean = p.edge_mean(x, e)?;
    Ok(p.column(e)
        .iter()
        .map(|&(v, pv)| {
            let d = f64::from(x[v]) - mean;
            pv * d * d
        })
        .sum())
}

/// Parses a weighted-incidence file: one line per edge of `h`, holding the
/// positive shares of that edge's vertices in ascending vertex order.
/// Blank lines and lines starting with `%` are skipped.
pub fn parse_incidence(text: &str, h: &Hypergraph) -> Result<StochasticIncidence> {
    const NAME: &str = "incidence";
    let mut shares = Vec::with_capacity(h.n_edges());
    let mut last_line = 0;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let e = shares.len();
        if e >= h.n_edges() {
            return Err(Error::parse(NAME, lineno, "more share lines than edges"));
        }
        let row = trimmed
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| Error::parse(NAME, lineno, format!("bad share {tok:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if row.len() != h.edge(e).len() {
            return Err(Error::parse(
                NAME,
                lineno,
                format!("expected {} shares, found {}", h.edge(e).len(), row.len()),
            ));
        }
        if row.iter().any(|&s| !s.is_finite() || s <= 0.0) {
            return Err(Error::parse(NAME, lineno, "shares must be positive and finite"));
        }
        shares.push(row);
    }
    if shares.len() != h.n_edges() {
        return Err(Error::parse(
            NAME,
            last_line + 1,
            format!("expected {} share lines, found {}", h.n_edges(), shares.len()),
        ));
    }
    StochasticIncidence::from_shares(h, &shares)
}
