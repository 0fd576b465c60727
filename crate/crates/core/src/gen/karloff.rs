use serde::{Deserialize, Serialize};

use crate::hypercore::Graph;
use crate::{Error, Result};

/// Vertex-count guard for the quadratic adjacency construction.
pub const KARLOFF_MAX_VERTICES: usize = 5000;

/// Graph on the `t`-subsets of `{1, …, m}`, two subsets adjacent when they
/// share exactly `b` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KarloffSpec {
    pub m: usize,
    pub t: usize,
    pub b: usize,
}

impl KarloffSpec {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.t == 0 || self.t > self.m || self.b >= self.t {
            return Err(Error::InvalidInput(format!(
                "Karloff parameters (m, t, b) = ({}, {}, {}) need 1 ≤ t ≤ m and b < t",
                self.m, self.t, self.b
            )));
        }
        Ok(())
    }
}

/// All `t`-subsets of `{1, …, m}` in lexicographic order.
pub fn subsets(m: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=t).collect();
    if t == 0 || t > m {
        return out;
    }
    loop {
        out.push(current.clone());
        let Some(i) = (0..t).rev().find(|&i| current[i] < m - (t - 1 - i)) else {
            break;
        };
        current[i] += 1;
        for j in i + 1..t {
            current[j] = current[j - 1] + 1;
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for i in 0..k.min(n - k) {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Vertex `i` is the `i`-th subset in lexicographic order.
pub fn karloff_graph(spec: &KarloffSpec) -> Result<Graph> {
    spec.validate()?;
    match binomial(spec.m, spec.t) {
        Some(count) if count <= KARLOFF_MAX_VERTICES => {}
        _ => {
            return Err(Error::Resource(format!(
                "C({}, {}) vertices exceed the limit of {KARLOFF_MAX_VERTICES}",
                spec.m, spec.t
            )))
        }
    }
    let sets = subsets(spec.m, spec.t);
    let mut edges = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let shared = sets[i].iter().filter(|v| sets[j].contains(v)).count();
            if shared == spec.b {
                edges.push((i, j));
            }
        }
    }
    if edges.is_empty() {
        return Err(Error::InvalidInput(format!(
            "Karloff parameters ({}, {}, {}) give no edges",
            spec.m, spec.t, spec.b
        )));
    }
    Graph::unweighted(sets.len(), &edges)
}
