//! Distributional hypergraph partitioning.
//!
//! Solutions are probability distributions over spin assignments
//! `x ∈ {±1}ⁿ`, summarised by their autocorrelation `Q = E[x xᵀ]`. Every
//! objective in this crate is a family of PSD quadratic forms `⟨Mᵢ, Q⟩`
//! aggregated by a max, min, sum or scaled pair.
//!
//! - [`hypercore`]: hypergraphs, stochastic incidence, imbalance/variance
//!   matrices, clique expansion and file formats.
//! - [`objective`]: autocorrelations, spin distributions, quadratic families
//!   and LogSumExp smoothing.
//! - [`qsim`]: statevector simulation of the multi-angle QAOA ansatz with
//!   adjoint gradients and Adam training.
//! - [`classic`]: SDP relaxation, hyperplane rounding, the exact matrix-game
//!   solver and brute-force oracles.
//! - [`gen`]: Poisson random hypergraphs, Karloff graphs and maximal cliques.

pub mod classic;
pub mod error;
pub mod gen;
pub mod hypercore;
pub mod objective;
pub mod qsim;
pub mod spins;

pub use error::{Error, Result};
