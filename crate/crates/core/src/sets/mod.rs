//! Concrete feasible and auxiliary sets with their oracles.

mod flow;
mod nuclear;
mod simple;

pub use flow::{
    capacitated_flow_lmo, dag_shortest_path_lmo, CapacitatedPolytope, DagNetwork, Edge,
    PathPolytope, FLOW_TOL,
};
pub use nuclear::{
    nuclear_norm, singular_values, water_filling_threshold, NuclearBall, NuclearLmoMode,
};
pub use simple::{BoxSet, FullSpace, L2Ball};
