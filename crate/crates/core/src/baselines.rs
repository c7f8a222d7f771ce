//! Projected subgradient descent, the projection-based reference method.

use rand::SeedableRng;

use crate::clock::Stopwatch;
use crate::error::{Error, Result};
use crate::oracles::OracleRng;
use crate::problem::ProblemInstance;
use crate::solver::{RunOptions, RunReport, TraceRow};
use crate::space::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StepRule {
    /// `c / sqrt(T)` at every iteration.
    #[default]
    Constant,
    /// `c / sqrt(t)`
    Decaying,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PgdParams {
    pub horizon: usize,
    pub scale: f64,
    pub rule: StepRule,
    /// Test every iterate for membership in the feasible set.
    pub check_feasibility: bool,
}

impl PgdParams {
    /// Constant step `D / (L sqrt(T))`.
    pub fn default_for(problem: &ProblemInstance, horizon: usize) -> Result<Self> {
        let c = &problem.constants;
        if c.lipschitz == 0.0 {
            return Err(Error::DegenerateConstants(
                "default step needs L > 0".into(),
            ));
        }
        Ok(PgdParams {
            horizon,
            scale: c.diameter / c.lipschitz,
            rule: StepRule::Constant,
            check_feasibility: false,
        })
    }

    fn step_size(&self, t: usize) -> f64 {
        match self.rule {
            StepRule::Constant => self.scale / (self.horizon as f64).sqrt(),
            StepRule::Decaying => self.scale / (t as f64).sqrt(),
        }
    }
}

/// `x_{t+1} = Proj_X(x_t - step_t s_t)` from the problem's start point, reporting
/// the running average of `x_1, ..., x_T`.
pub fn pgd_run(
    problem: &ProblemInstance,
    params: &PgdParams,
    seed: u64,
    options: &RunOptions,
) -> Result<RunReport> {
    if params.horizon == 0 {
        return Err(Error::InvalidParams("T must be at least 1".into()));
    }
    if !(params.scale >= 0.0) || !params.scale.is_finite() {
        return Err(Error::InvalidParams(format!(
            "step scale {} must be nonnegative",
            params.scale
        )));
    }
    let projector = problem
        .feasible_projector
        .as_ref()
        .ok_or(Error::ProjectionUnavailable)?;
    problem.validate()?;
    let clock = Stopwatch::start();
    let mut rng = OracleRng::seed_from_u64(seed);
    let shape = problem.shape();
    let mut report = RunReport::new(params.horizon, None, seed, shape);
    let schedule = options.record.times(params.horizon);
    let mut next_record = schedule.iter().peekable();

    let mut x = problem.initial_point.clone();
    let mut sum = Point::zeros(shape);
    let mut abs_sum = Point::zeros(shape);
    let mut infeasible = 0usize;
    for t in 1..=params.horizon {
        if params.check_feasibility && projector.contains(&x, 1e-8) == Some(false) {
            infeasible += 1;
        }
        sum.axpy(1.0, &x)?;
        for (a, v) in abs_sum.as_mut_slice().iter_mut().zip(x.as_slice()) {
            *a += v.abs();
        }
        if next_record.peek() == Some(&&t) {
            next_record.next();
            let (obj, viol) = problem.evaluate(&sum.scale(1.0 / t as f64))?;
            report.rows.push(TraceRow {
                t,
                obj_avg: obj,
                violation_l2: Some(viol),
                q_norm: None,
                w_norm: None,
                lmo_gap: None,
                wall_ms: clock.elapsed().as_secs_f64() * 1e3,
            });
        }
        if t == params.horizon {
            break;
        }
        let s = problem.objective.subgradient(&x, &mut rng)?;
        report.stats.subgrad_calls += 1;
        let mut trial = x.clone();
        trial.axpy(-params.step_size(t), &s)?;
        x = projector.project(&trial)?;
        report.stats.projection_calls += 1;
    }
    let zero = Point::zeros(shape);
    report.finish_sums(sum, zero, abs_sum, params.horizon);
    if params.check_feasibility {
        report.infeasible_iterates = Some(infeasible);
    }
    Ok(report)
}
