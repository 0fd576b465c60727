#![allow(dead_code)]

use disthyp::hypercore::{Graph, Hypergraph, StochasticIncidence};
use proptest::prelude::*;
use proptest::sample::subsequence;

/// Edges of `n` vertices, each of size 1 to `max_size`.
pub fn edges(n: usize, max_edges: usize, max_size: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    let vertices: Vec<usize> = (0..n).collect();
    prop::collection::vec(subsequence(vertices, 1..=max_size.min(n)), 1..=max_edges)
}

pub fn hypergraph(max_n: usize, max_edges: usize, max_size: usize) -> impl Strategy<Value = Hypergraph> {
    (2..=max_n)
        .prop_flat_map(move |n| (Just(n), edges(n, max_edges, max_size)))
        .prop_map(|(n, e)| Hypergraph::unweighted(n, e).expect("valid edges"))
}

/// A hypergraph with positive random shares on every edge.
pub fn weighted_incidence(
    max_n: usize,
    max_edges: usize,
    max_size: usize,
) -> impl Strategy<Value = (Hypergraph, StochasticIncidence)> {
    (hypergraph(max_n, max_edges, max_size), prop::collection::vec(0.1f64..1.0, max_edges * max_size)).prop_map(
        move |(h, pool)| {
            let shares: Vec<Vec<f64>> = h
                .edges()
                .iter()
                .enumerate()
                .map(|(e, edge)| (0..edge.len()).map(|k| pool[e * max_size + k]).collect())
                .collect();
            let p = StochasticIncidence::from_shares(&h, &shares).expect("positive shares");
            (h, p)
        },
    )
}

/// Hypergraph whose edges are distinct, so every weight is one.
pub fn unit_hypergraph(max_n: usize, max_edges: usize, max_size: usize) -> impl Strategy<Value = Hypergraph> {
    hypergraph(max_n, max_edges, max_size).prop_filter("unit weights", |h| h.has_unit_weights())
}

pub fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
            let k = pairs.len();
            (Just(n), subsequence(pairs, 1..=k))
        })
        .prop_map(|(n, e)| Graph::unweighted(n, &e).expect("simple graph"))
}

pub fn all_spins(n: usize) -> impl Iterator<Item = Vec<i8>> {
    (0..1usize << n).map(move |i| disthyp::spins::spins_from_index(i, n))
}

pub fn min_eigenvalue(m: &nalgebra::DMatrix<f64>) -> f64 {
    m.clone().symmetric_eigen().eigenvalues.min()
}
