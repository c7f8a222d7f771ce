//! Concrete problem families wired to their oracles and constants.

mod extension;
mod minflow;
mod oned;
mod r4nr;

pub use extension::mcshane_whitney_extend_1d;
pub use minflow::{
    build_minflow, default_network, CoefficientRule, Formulation, MinFlowInstance, DEFAULT_GRAPH,
};
pub use oned::{build_oned, OneDimObjective, OneDimSpec};
pub use r4nr::{build_r4nr, gen_r4nr, R4nrConfig, R4nrInstance, SubgradientMode};
