use std::collections::HashMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A weighted hypergraph on dense 0-based vertex ids.
///
/// Edges are stored as sorted vertex lists. Constructing a hypergraph merges
/// repeated vertex sets into one edge whose weight is the sum of the copies,
/// keeping the position of the first occurrence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hypergraph {
    n_vertices: usize,
    edges: Vec<Vec<usize>>,
    weights: Vec<f64>,
}

impl Hypergraph {
    pub fn new(n_vertices: usize, edges: Vec<Vec<usize>>, weights: Option<Vec<f64>>) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::InvalidHypergraph("vertex count must be positive".into()));
        }
        let weights = match weights {
            Some(w) => {
                if w.len() != edges.len() {
                    return Err(Error::InvalidHypergraph(format!(
                        "{} weights given for {} edges",
                        w.len(),
                        edges.len()
                    )));
                }
                w
            }
            None => vec![1.0; edges.len()],
        };

        let mut merged: Vec<Vec<usize>> = Vec::with_capacity(edges.len());
        let mut merged_w: Vec<f64> = Vec::with_capacity(edges.len());
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        for (idx, (mut edge, w)) in edges.into_iter().zip(weights).enumerate() {
            if edge.is_empty() {
                return Err(Error::InvalidHypergraph(format!("edge {idx} is empty")));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {idx} has invalid weight {w}"
                )));
            }
            edge.sort_unstable();
            if let Some(&v) = edge.iter().find(|&&v| v >= n_vertices) {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {idx} references vertex {v} but there are only {n_vertices}"
                )));
            }
            if edge.windows(2).any(|p| p[0] == p[1]) {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {idx} repeats a vertex"
                )));
            }
            match seen.get(&edge) {
                Some(&slot) => merged_w[slot] += w,
                None => {
                    seen.insert(edge.clone(), merged.len());
                    merged.push(edge);
                    merged_w.push(w);
                }
            }
        }
        Ok(Self {
            n_vertices,
            edges: merged,
            weights: merged_w,
        })
    }

    pub fn unweighted(n_vertices: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(n_vertices, edges, None)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &[usize] {
        &self.edges[e]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, e: usize) -> f64 {
        self.weights[e]
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weights.iter().all(|&w| w == 1.0)
    }

    /// True when every edge has exactly two vertices.
    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    /// 0/1 vertex-by-edge incidence matrix `B`.
    pub fn incidence_matrix(&self) -> DMatrix<f64> {
        let mut b = DMatrix::zeros(self.n_vertices, self.edges.len());
        for (e, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                b[(v, e)] = 1.0;
            }
        }
        b
    }
}
