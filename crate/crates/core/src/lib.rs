//! Metric 2-step nilpotent Lie algebras built from directed graphs.
//!
//! A graph with vertices `X_1..X_m` and edges `Z_1..Z_q` defines the algebra
//! `n = V (+) z` with `[X_i, X_l] = Z_k` for each edge `X_i -> X_l`. The crate
//! classifies these algebras, computes the spectra of `j(Z)`, evaluates
//! geodesics of the simply connected group in closed form and searches for
//! geodesics closed by the standard lattice.

pub mod algebra;
pub mod approx;
pub mod cli;
pub mod error;
pub mod exact;
pub mod geodesic;
pub mod graph;
pub mod lattice;
pub mod sampling;
pub mod spectral;

pub use algebra::{CenterVector, GraphLieAlgebra, LogPoint};
pub use error::{Error, Result};
pub use graph::{parse_graph, DirectedGraph, Matching};
