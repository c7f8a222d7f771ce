//! Projection-free primal-dual optimization of nonsmooth convex problems
//! with functional constraints.
//!
//! The feasible set is touched only through a linear minimization oracle.
//! An auxiliary copy of the variable lives in a simple set with a cheap
//! projection, and a running drift vector couples the two.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baselines;
mod clock;
pub mod error;
pub mod oracles;
pub mod problem;
pub mod problems;
pub mod reference;
pub mod sets;
pub mod solver;
pub mod space;

pub use error::{Error, Result};
pub use oracles::{LinearMinimizer, LmoQuery, OracleRng, Projector, SubgradientOracle};
pub use problem::{Optimum, ProblemConstants, ProblemInstance, SolverParams};
pub use space::{ConstraintVec, Point, Shape};
