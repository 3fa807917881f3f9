//! Polyhedra: representations, double description conversion, incidence,
//! graphs, dimension and polarity.

mod analysis;
mod convert;
mod dd;
pub mod io;
mod repr;

pub use analysis::{
    classify, dual_graph, facet_rows, incidence, polar, skeleton_graph, skeleton_graph_with, Classification, Incidence,
    Polyhedron,
};
pub use convert::{affine_dimension, dimension, hrep_to_vrep, reduce_to_full_dim, vrep_to_hrep, AffineMap};
pub use repr::{HPolyhedron, HRow, VPolyhedron};
