//! Points of the Grassmannian of `k((z))`, Maya diagrams, Plücker
//! coordinates and the embedding of finite Grassmannians.

mod finite;
mod maya;
mod point;

pub use finite::{
    all_subspaces, embed_finite, finite_coordinates, quotient_basis, FiniteEmbedding,
};
pub use maya::{maya_to_partition, partition_to_maya, MayaDiagram, Partition};
pub use point::{act, chart_transition, in_chart, index, plucker, GrassPoint};
