use std::collections::BTreeSet;

use nalgebra::DMatrix;

use crate::hypercore::Hypergraph;
use crate::{Error, Result};

/// Weighted undirected simple graph. Edges are stored with `u < v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl Graph {
    pub fn new(n_vertices: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut normalised = Vec::with_capacity(edges.len());
        for (u, v, w) in edges {
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop on vertex {u}")));
            }
            if u >= n_vertices || v >= n_vertices {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) out of range for {n_vertices} vertices"
                )));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidInput(format!("edge ({u}, {v}) has weight {w}")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::InvalidInput(format!(
                    "edge ({}, {}) listed twice",
                    key.0, key.1
                )));
            }
            normalised.push((key.0, key.1, w));
        }
        Ok(Self {
            n_vertices,
            edges: normalised,
        })
    }

    pub fn unweighted(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(n_vertices, edges.iter().map(|&(u, v)| (u, v, 1.0)).collect())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn adjacency(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n_vertices, self.n_vertices);
        for &(u, v, w) in &self.edges {
            a[(u, v)] = w;
            a[(v, u)] = w;
        }
        a
    }

    /// `L = diag(A𝟙) − A`.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let a = self.adjacency();
        let mut l = -a.clone();
        for v in 0..self.n_vertices {
            l[(v, v)] = a.row(v).sum();
        }
        l
    }

    /// Neighbour lists in ascending order.
    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_vertices];
        for &(u, v, _) in &self.edges {
            out[u].push(v);
            out[v].push(u);
        }
        for list in &mut out {
            list.sort_unstable();
        }
        out
    }

    /// The graph as a hypergraph of 2-vertex edges with the same weights.
    pub fn to_hypergraph(&self) -> Result<Hypergraph> {
        Hypergraph::new(
            self.n_vertices,
            self.edges.iter().map(|&(u, v, _)| vec![u, v]).collect(),
            Some(self.edges.iter().map(|e| e.2).collect()),
        )
    }
}

/// Unweighted clique expansion: `{u, v}` is an edge iff some hyperedge holds
/// both. Edges come out in lexicographic order.
pub fn clique_expansion(h: &Hypergraph) -> Graph {
    let mut pairs = BTreeSet::new();
    for edge in h.edges() {
        for (i, &u) in edge.iter().enumerate() {
            for &v in &edge[i + 1..] {
                pairs.insert((u, v));
            }
        }
    }
    Graph {
        n_vertices: h.n_vertices(),
        edges: pairs.into_iter().map(|(u, v)| (u, v, 1.0)).collect(),
    }
}

/// Whether `x` assigns two different spins inside `edge`.
pub fn cuts(x: &[i8], edge: &[usize]) -> bool {
    match edge.first() {
        Some(&first) => edge.iter().any(|&v| x[v] != x[first]),
        None => false,
    }
}

/// `Σ_e w_e 1[x cuts e]`.
pub fn standard_cut_value(x: &[i8], h: &Hypergraph) -> Result<f64> {
    crate::spins::check_spins(x, h.n_vertices())?;
    Ok(h.edges()
        .iter()
        .zip(h.weights())
        .filter(|(edge, _)| cuts(x, edge))
        .map(|(_, &w)| w)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_expansion() {
        let h = Hypergraph::unweighted(3, vec![vec![0, 1, 2]]).unwrap();
        let g = clique_expansion(&h);
        assert_eq!(
            g.edges().iter().map(|e| (e.0, e.1)).collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (1, 2)]
        );
    }

    #[test]
    fn path_expansion() {
        let h = Hypergraph::unweighted(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let g = clique_expansion(&h);
        assert_eq!(
            g.edges().iter().map(|e| (e.0, e.1)).collect::<Vec<_>>(),
            vec![(0, 1), (1, 2)]
        );
    }

    #[test]
    fn overlapping_edges_do_not_duplicate_pairs() {
        let h = Hypergraph::unweighted(4, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        assert_eq!(clique_expansion(&h).n_edges(), 5);
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let g = Graph::new(3, vec![(0, 1, 2.0), (1, 2, 0.5)]).unwrap();
        let l = g.laplacian();
        for v in 0..3 {
            assert!(l.row(v).sum().abs() < 1e-15);
        }
        assert_eq!(l[(1, 1)], 2.5);
    }

    #[test]
    fn cut_values() {
        let h = Hypergraph::unweighted(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(standard_cut_value(&[1, 1, 1], &h).unwrap(), 0.0);
        assert_eq!(standard_cut_value(&[1, 1, -1], &h).unwrap(), 1.0);
    }

    #[test]
    fn rejects_loops_and_repeats() {
        assert!(Graph::unweighted(2, &[(0, 0)]).is_err());
        assert!(Graph::unweighted(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::unweighted(2, &[(0, 2)]).is_err());
    }
}
