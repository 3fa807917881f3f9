//! Exact polytope graphs and diameters.
//!
//! The crate converts between inequality and vertex descriptions with the
//! double description method over arbitrary-precision rationals, builds
//! vertex-edge and facet-ridge graphs, measures distances and diameters,
//! searches non-revisiting and monotone paths, and implements the classic
//! constructions around the Hirsch bound `diam <= n - d`: wedges, products,
//! truncations, the Klee-Walkup polytope and its unbounded relative,
//! transportation and 0/1 polytopes, and Hirsch-sharp families.

pub mod abstraction;
pub mod arith;
pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod par;
pub mod paths;
pub mod polytope;
pub mod simplicial;

pub use arith::{QMatrix, Rational};
pub use error::{Error, Result};
pub use graph::PolyGraph;
pub use par::Execution;
pub use polytope::{HPolyhedron, HRow, Polyhedron, VPolyhedron};
