//! Dense triangle-free graph coloring through VC-dimension: graph families,
//! hypergraph transversality and shattering, paired VC-dimension, exact
//! chromatic solvers and the constructive coloring procedures built on them.

pub mod bitset;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod lp;
pub mod named;
pub mod pipelines;
pub mod rational;
pub mod registry;
pub mod search;
pub mod solvers;
pub mod sphere;

pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use graph::{Coloring, Cut, Graph};
pub use hypergraph::{Hypergraph, PairedHypergraph, PairedVcWitness};
pub use rational::Rational;
