//! Hypergraphs, stochastic incidence and the per-edge and aggregate
//! imbalance/variance quadratic forms.

mod graph;
mod hypergraph;
mod incidence;
pub mod io;
mod quadratics;

pub use graph::{clique_expansion, cuts, standard_cut_value, Graph};
pub use hypergraph::Hypergraph;
pub use incidence::{
    edge_imbalance, edge_variance, parse_incidence, uniform_incidence, StochasticIncidence,
};
pub use io::{read_hypergraph, write_hypergraph, Format};
pub use quadratics::{edge_quadratics, AggregateQuadratics, EdgeQuadratics};
