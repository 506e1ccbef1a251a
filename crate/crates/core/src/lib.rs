//! Explicit spanning simplicial spheres in dense k-uniform hypergraphs.
//!
//! The crate builds spheres inside structured hosts (complete partite
//! k-graphs, blow-ups of tight paths, chains of blow-ups), assembles them into
//! spanning spheres by matching-based allocation and facet gluing, and checks
//! every claimed object exactly: degrees, tight connectivity, sphere
//! certificates and spanning-ness.

pub mod allocation;
pub mod blowup;
pub mod chain;
pub mod cli;
mod combinatorics;
pub mod complex;
pub mod error;
pub mod extremal;
pub mod hypergraph;
pub mod io;
pub mod matching;
pub mod spheres;

/// Vertices are dense non-negative integers.
pub type Vertex = usize;

/// Exact rational used for declared parameters (ε, γ, m).
pub type Rational = num_rational::Ratio<i64>;

pub use blowup::Blowup;
pub use complex::{CertificateLevel, SimplicialComplex, SphereCertificate};
pub use error::{Error, Result};
pub use hypergraph::{EdgeOracle, Hypergraph, TightWalk};
