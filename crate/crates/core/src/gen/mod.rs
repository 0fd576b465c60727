//! Instance generators: Poisson random hypergraphs, Karloff graphs and
//! their maximal-clique hypergraphs.

mod cliques;
mod karloff;
mod poisson;

pub use cliques::{cliques_to_hypergraph, maximal_cliques};
pub use karloff::{karloff_graph, subsets, KarloffSpec, KARLOFF_MAX_VERTICES};
pub use poisson::{poisson_hypergraph, sample_poisson, sample_vertices, PoissonSpec, MAX_POISSON_RATE};

use crate::hypercore::Hypergraph;
use crate::Result;

/// Karloff graph, its maximal cliques, and the hypergraph they form.
pub fn karloff_clique_hypergraph(spec: &KarloffSpec) -> Result<Hypergraph> {
    let g = karloff_graph(spec)?;
    cliques_to_hypergraph(&maximal_cliques(&g), g.n_vertices())
}
