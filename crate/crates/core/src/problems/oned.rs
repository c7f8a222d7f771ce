//! One-dimensional test problems on an interval `X = [lo, hi]` with `Y = R`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::oracles::{OracleRng, SubgradientOracle};
use crate::problem::{Optimum, ProblemConstants, ProblemInstance};
use crate::sets::{BoxSet, FullSpace};
use crate::space::{Point, Shape};

/// Objective of a one-dimensional problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OneDimObjective {
    /// `f(x) = slope * x`
    Linear { slope: f64 },
    /// `max{e^-x, e^x}` on the interval, extended linearly outside it with
    /// slope `e^{max(|lo|, |hi|)}`.
    ExpMax,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneDimSpec {
    pub lo: f64,
    pub hi: f64,
    pub start: f64,
    pub objective: OneDimObjective,
}

impl OneDimSpec {
    /// `X = [0, 1]`, `f(x) = x`, started at `x = 1`. Its optimum is 0.
    pub fn unit_linear() -> Self {
        OneDimSpec {
            lo: 0.0,
            hi: 1.0,
            start: 1.0,
            objective: OneDimObjective::Linear { slope: 1.0 },
        }
    }

    fn lipschitz(&self) -> f64 {
        match self.objective {
            OneDimObjective::Linear { slope } => slope.abs(),
            OneDimObjective::ExpMax => self.lo.abs().max(self.hi.abs()).exp(),
        }
    }

    fn optimum(&self) -> f64 {
        match self.objective {
            OneDimObjective::Linear { slope } => (slope * self.lo).min(slope * self.hi),
            OneDimObjective::ExpMax => expmax(0f64.clamp(self.lo, self.hi)),
        }
    }
}

fn expmax(x: f64) -> f64 {
    (-x).exp().max(x.exp())
}

#[derive(Debug, Clone)]
struct OneDimOracle(OneDimSpec);

impl OneDimOracle {
    fn slope_at(&self, x: f64) -> f64 {
        let s = &self.0;
        match s.objective {
            OneDimObjective::Linear { slope } => slope,
            OneDimObjective::ExpMax => {
                let lip = s.lipschitz();
                if x > s.hi {
                    lip
                } else if x < s.lo {
                    -lip
                } else if x >= 0.0 {
                    x.exp()
                } else {
                    -(-x).exp()
                }
            }
        }
    }
}

impl SubgradientOracle for OneDimOracle {
    fn value(&self, y: &Point) -> Result<f64> {
        y.ensure_shape(Shape::Vector(1))?;
        let x = y.as_slice()[0];
        let s = &self.0;
        Ok(match s.objective {
            OneDimObjective::Linear { slope } => slope * x,
            OneDimObjective::ExpMax => {
                let lip = s.lipschitz();
                if x > s.hi {
                    expmax(s.hi) + lip * (x - s.hi)
                } else if x < s.lo {
                    expmax(s.lo) + lip * (s.lo - x)
                } else {
                    expmax(x)
                }
            }
        })
    }

    fn subgradient(&self, y: &Point, _rng: &mut OracleRng) -> Result<Point> {
        y.ensure_shape(Shape::Vector(1))?;
        Ok(Point::scalar(self.slope_at(y.as_slice()[0])))
    }

    fn norm_bound(&self) -> Option<f64> {
        Some(self.0.lipschitz())
    }
}

/// Builds the interval problem with exact deterministic oracles.
pub fn build_oned(spec: OneDimSpec) -> Result<ProblemInstance> {
    if !(spec.lo < spec.hi) || !spec.lo.is_finite() || !spec.hi.is_finite() {
        return Err(Error::BadDims(format!(
            "interval [{}, {}] is empty",
            spec.lo, spec.hi
        )));
    }
    if !(spec.lo..=spec.hi).contains(&spec.start) {
        return Err(Error::InfeasibleStart);
    }
    let set = Arc::new(BoxSet::new(vec![spec.lo], vec![spec.hi])?);
    let constants = ProblemConstants::unconstrained(spec.lipschitz(), spec.hi - spec.lo);
    let problem = ProblemInstance::new(
        Arc::new(OneDimOracle(spec)),
        Vec::new(),
        set.clone(),
        Arc::new(FullSpace::new(Shape::Vector(1))),
        constants,
        Point::scalar(spec.start),
    )?
    .with_optimum(Optimum::Exact(spec.optimum()))
    .with_feasible_projector(set)?;
    Ok(problem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::mcshane_whitney_extend_1d;
    use rand::SeedableRng;

    #[test]
    fn unit_linear_problem() {
        let p = build_oned(OneDimSpec::unit_linear()).unwrap();
        assert_eq!(p.optimum.unwrap().value(), 0.0);
        assert_eq!(p.constants.lipschitz, 1.0);
        assert_eq!(p.constants.diameter, 1.0);
        assert_eq!(p.evaluate(&Point::scalar(0.25)).unwrap(), (0.25, 0.0));
    }

    #[test]
    fn expmax_matches_numeric_extension() {
        let spec = OneDimSpec {
            lo: -1.0,
            hi: 1.0,
            start: 0.5,
            objective: OneDimObjective::ExpMax,
        };
        let oracle = OneDimOracle(spec);
        for k in 0..=60 {
            let x = -3.0 + k as f64 * 0.1;
            let closed = oracle.value(&Point::scalar(x)).unwrap();
            let numeric = mcshane_whitney_extend_1d(expmax, -1.0, 1.0, std::f64::consts::E, x);
            assert!((closed - numeric).abs() < 1e-9, "x = {x}");
        }
        assert_eq!(build_oned(spec).unwrap().optimum.unwrap().value(), 1.0);
    }

    #[test]
    fn expmax_subgradient_inequality() {
        let spec = OneDimSpec {
            lo: -1.0,
            hi: 1.0,
            start: 0.0,
            objective: OneDimObjective::ExpMax,
        };
        let oracle = OneDimOracle(spec);
        let mut rng = OracleRng::seed_from_u64(0);
        for i in 0..40 {
            let x = -2.0 + i as f64 * 0.1;
            let s = oracle
                .subgradient(&Point::scalar(x), &mut rng)
                .unwrap()
                .as_slice()[0];
            assert!(s.abs() <= spec.lipschitz() + 1e-12);
            for j in 0..40 {
                let z = -2.0 + j as f64 * 0.1;
                let lhs = oracle.value(&Point::scalar(z)).unwrap();
                let rhs = oracle.value(&Point::scalar(x)).unwrap() + s * (z - x);
                assert!(lhs >= rhs - 1e-12, "x = {x}, z = {z}");
            }
        }
    }

    #[test]
    fn rejects_bad_interval_and_start() {
        let mut spec = OneDimSpec::unit_linear();
        spec.start = 2.0;
        assert_eq!(build_oned(spec).unwrap_err(), Error::InfeasibleStart);
        spec.lo = 1.0;
        assert!(matches!(build_oned(spec), Err(Error::BadDims(_))));
    }
}
