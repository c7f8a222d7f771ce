//! Oracle contracts consumed by the solver: inexact linear minimization over
//! the feasible set, projection onto the auxiliary set, and (stochastic)
//! subgradients with exact function values.

use std::time::Duration;

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::space::{ConstraintVec, Point, Shape};

/// The one random stream a solver run owns. Every oracle draws from it.
pub type OracleRng = ChaCha8Rng;

/// Tolerance below which a measured LMO gap is treated as floating noise.
pub const GAP_FLOOR: f64 = -1e-9;

/// Query for an inexact linear minimization oracle: minimize `<x, direction>`
/// over the set, with additive slack `budget` allowed in expectation.
#[derive(Debug, Clone)]
pub struct LmoQuery {
    pub direction: Point,
    pub budget: f64,
}

impl LmoQuery {
    pub fn new(direction: Point, budget: f64) -> Result<Self> {
        if !(budget >= 0.0) {
            return Err(Error::NegativeBudget(budget));
        }
        Ok(LmoQuery { direction, budget })
    }

    pub fn exact(direction: Point) -> Self {
        LmoQuery {
            direction,
            budget: 0.0,
        }
    }
}

/// A convex compact set reachable only through linear minimization.
pub trait LinearMinimizer: Send + Sync {
    fn shape(&self) -> Shape;

    fn lmo(&self, query: &LmoQuery, rng: &mut OracleRng) -> Result<Point>;

    /// `min_{x in set} <x, v>`, when the set can compute it exactly.
    fn exact_min(&self, _v: &Point) -> Result<f64> {
        Err(Error::ExactMinUnavailable)
    }

    /// Membership test, `None` when undecidable for this set.
    fn contains(&self, _x: &Point, _tol: f64) -> Option<bool> {
        None
    }
}

/// A closed convex set with a cheap Euclidean projection.
pub trait Projector: Send + Sync {
    fn shape(&self) -> Shape;

    fn project(&self, v: &Point) -> Result<Point>;

    fn contains(&self, _x: &Point, _tol: f64) -> Option<bool> {
        None
    }
}

/// A convex function with exact values and (possibly stochastic) subgradients.
pub trait SubgradientOracle: Send + Sync {
    fn value(&self, y: &Point) -> Result<f64>;

    /// A random vector whose expectation lies in the subdifferential at `y`.
    fn subgradient(&self, y: &Point, rng: &mut OracleRng) -> Result<Point>;

    /// Deterministic bound on the subgradient norm, when one is known.
    fn norm_bound(&self) -> Option<f64> {
        None
    }
}

/// Everything drawn at one query point `y`: objective subgradient, constraint
/// subgradients, and exact constraint values.
#[derive(Debug, Clone)]
pub struct SubgradientSample {
    pub objective_subgradient: Point,
    pub constraint_subgradients: Vec<Point>,
    pub constraint_values: ConstraintVec,
}

/// Draws one [`SubgradientSample`] at `y`. The objective is sampled first,
/// then each constraint in order, so the stream consumption is fixed.
pub fn sample_subgradients(
    objective: &dyn SubgradientOracle,
    constraints: &[std::sync::Arc<dyn SubgradientOracle>],
    y: &Point,
    rng: &mut OracleRng,
) -> Result<SubgradientSample> {
    let objective_subgradient = objective.subgradient(y, rng)?;
    let mut constraint_subgradients = Vec::with_capacity(constraints.len());
    let mut values = Vec::with_capacity(constraints.len());
    for h in constraints {
        let g = h.subgradient(y, rng)?;
        if let Some(bound) = h.norm_bound() {
            if g.norm() > bound * (1.0 + 1e-12) + 1e-12 {
                return Err(Error::OracleFailure(format!(
                    "constraint subgradient norm {} exceeds its bound {bound}",
                    g.norm()
                )));
            }
        }
        constraint_subgradients.push(g);
        values.push(h.value(y)?);
    }
    Ok(SubgradientSample {
        objective_subgradient,
        constraint_subgradients,
        constraint_values: ConstraintVec(values),
    })
}

/// Empirical LMO error `<x_ret, v> - min_x <x, v>`.
pub fn measure_lmo_gap(set: &dyn LinearMinimizer, x_ret: &Point, v: &Point) -> Result<f64> {
    let best = set.exact_min(v)?;
    Ok(x_ret.inner(v)? - best)
}

/// Call counters, timings and measured gaps for one run.
#[derive(Debug, Clone, Default)]
pub struct OracleStats {
    pub lmo_calls: u64,
    pub subgrad_calls: u64,
    pub projection_calls: u64,
    pub measured_gaps: Vec<f64>,
    pub lmo_time: Duration,
    pub subgrad_time: Duration,
    pub projection_time: Duration,
}

impl OracleStats {
    pub fn gap_summary(&self) -> Option<GapSummary> {
        GapSummary::from_gaps(&self.measured_gaps)
    }
}

/// Count, mean, min and max of measured LMO gaps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapSummary {
    pub count: usize,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl GapSummary {
    pub fn from_gaps(gaps: &[f64]) -> Option<Self> {
        if gaps.is_empty() {
            return None;
        }
        let (min, max) = gaps
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &g| {
                (lo.min(g), hi.max(g))
            });
        Some(GapSummary {
            count: gaps.len(),
            mean: gaps.iter().sum::<f64>() / gaps.len() as f64,
            min,
            max,
        })
    }

    /// Same summary with every gap expressed as a fraction of `scale`.
    pub fn scaled(&self, scale: f64) -> Self {
        GapSummary {
            count: self.count,
            mean: self.mean / scale,
            min: self.min / scale,
            max: self.max / scale,
        }
    }

    /// Histogram of `gaps / scale` over `bins` equal-width bins on `[0, max]`.
    pub fn histogram(gaps: &[f64], scale: f64, bins: usize) -> Vec<usize> {
        let bins = bins.max(1);
        let mut counts = vec![0; bins];
        let top = gaps.iter().fold(0.0f64, |m, &g| m.max(g / scale));
        for &g in gaps {
            let r = (g / scale).max(0.0);
            let idx = if top > 0.0 {
                ((r / top) * bins as f64) as usize
            } else {
                0
            };
            counts[idx.min(bins - 1)] += 1;
        }
        counts
    }
}
