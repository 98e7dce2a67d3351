//! Exact enumeration, asymptotic estimates and switching-based sampling for
//! `r`-uniform hypergraphs with a given degree sequence, handled through
//! their bipartite incidence graphs.

pub mod asymptotics;
pub mod bigraph;
pub mod cli;
pub mod degree;
pub mod error;
pub mod oracle;
pub mod pattern;
pub mod switching;

pub use bigraph::{BipartiteGraph, Classification, Hypergraph};
pub use degree::DegreeSequence;
pub use error::{Error, Result};
