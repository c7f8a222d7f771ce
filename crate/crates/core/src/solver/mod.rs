//! The primal-dual projection-free method.
//!
//! Each iteration calls the LMO of the feasible set `X` once with direction
//! `-Q_t`, takes a closed-form proximal step for the auxiliary copy `y` in
//! `Y` followed by one projection, accumulates the coupling drift
//! `Q_{t+1} = Q_t + y_{t+1} - x_{t+1}`, and updates the functional-constraint
//! multipliers with
//!
//! ```text
//! W_{i,t+1} = max{ W_{i,t} + h_i(y_t) + <g_{i,t}, y_{t+1} - y_t>, [-h_i(y_{t+1})]_+ }
//! ```
//!
//! The output is the running average of the LMO answers `x_t`.

mod argmin;
mod bounds;
mod report;
mod schedule;

pub use argmin::lemma4_argmin_oracle;
pub use bounds::{
    theorem1_bound, theorem2_bound, theorem3_qbound, violation_coefficients, MultiplierNorms,
    QBoundMode, ViolationCoefficients,
};
pub use report::{RecordSchedule, RunOptions, RunReport, TraceRow, CSV_HEADER};
pub use schedule::{configure_parsel1, configure_parsel2};

use rand::SeedableRng;

use crate::clock::Stopwatch;
use crate::error::{Error, Result};
use crate::oracles::{sample_subgradients, LmoQuery, OracleRng, OracleStats, SubgradientSample};
use crate::problem::{ProblemInstance, SolverParams};
use crate::space::{ConstraintVec, Point};

/// Iterate state after `t` iterations (1-based, `t = 1` after initialization).
#[derive(Debug, Clone)]
pub struct SolverState {
    pub t: usize,
    pub x: Point,
    pub y: Point,
    pub q: Point,
    pub w: ConstraintVec,
    /// Subgradients and constraint values drawn at the current `y`.
    pub sample: SubgradientSample,
    pub sum_x: Point,
    pub sum_y: Point,
    /// Componentwise `sum_t |x_t| + |y_t|`, the scale of rounding in the sums.
    pub abs_sum: Point,
    pub stats: OracleStats,
}

impl SolverState {
    pub fn average_x(&self) -> Point {
        self.sum_x.scale(1.0 / self.t as f64)
    }

    pub fn average_y(&self) -> Point {
        self.sum_y.scale(1.0 / self.t as f64)
    }

    /// Smallest `W_{i,t}` and smallest `W_{i,t} + h_i(y_t)`; `+inf` when `m = 0`.
    pub fn multiplier_margins(&self) -> (f64, f64) {
        let h = self.sample.constraint_values.as_slice();
        self.w
            .as_slice()
            .iter()
            .zip(h)
            .fold((f64::INFINITY, f64::INFINITY), |(a, b), (&w, &hi)| {
                (a.min(w), b.min(w + hi))
            })
    }
}

/// Intermediate quantities of one iteration.
#[derive(Debug, Clone)]
pub struct StepTrace {
    pub x_next: Point,
    pub p: Point,
    pub y_tilde: Point,
    pub lmo_gap: Option<f64>,
}

fn abs_accumulate(acc: &mut Point, v: &Point) {
    for (a, b) in acc.as_mut_slice().iter_mut().zip(v.as_slice()) {
        *a += b.abs();
    }
}

/// `y_1 = x_1`, `Q_1 = 0`, `W_1 = [-h(y_1)]_+`, and the first subgradient draw.
pub fn init_state(problem: &ProblemInstance, rng: &mut OracleRng) -> Result<SolverState> {
    problem.validate()?;
    let x = problem.initial_point.clone();
    let y = x.clone();
    let mut stats = OracleStats::default();
    let clock = Stopwatch::start();
    let sample = sample_subgradients(problem.objective.as_ref(), &problem.constraints, &y, rng)?;
    stats.subgrad_calls += 1;
    stats.subgrad_time += clock.elapsed();
    let w = sample.constraint_values.neg().positive_part();
    let mut abs_sum = Point::zeros(x.shape());
    abs_accumulate(&mut abs_sum, &x);
    abs_accumulate(&mut abs_sum, &y);
    Ok(SolverState {
        t: 1,
        q: Point::zeros(x.shape()),
        sum_x: x.clone(),
        sum_y: y.clone(),
        abs_sum,
        x,
        y,
        w,
        sample,
        stats,
    })
}

/// Advances `state` from `t` to `t + 1`.
pub fn step(
    problem: &ProblemInstance,
    params: &SolverParams,
    state: &mut SolverState,
    rng: &mut OracleRng,
    measure_gap: bool,
) -> Result<StepTrace> {
    if state.t >= params.horizon {
        return Err(Error::InvalidParams(format!(
            "state is at t = {} but T = {}",
            state.t, params.horizon
        )));
    }
    let g = problem.constants.constraint_bound;
    let (eta, alpha, beta) = (params.eta, params.alpha, params.beta);

    // x_{t+1} = LMO(-Q_t; delta)
    let direction = state.q.neg();
    let clock = Stopwatch::start();
    let x_next = problem
        .feasible
        .lmo(&LmoQuery::new(direction.clone(), params.delta)?, rng)?;
    state.stats.lmo_calls += 1;
    state.stats.lmo_time += clock.elapsed();
    x_next.ensure_shape(state.x.shape())?;
    let lmo_gap = if measure_gap {
        let gap = x_next.inner(&direction)? - problem.feasible.exact_min(&direction)?;
        state.stats.measured_gaps.push(gap);
        Some(gap)
    } else {
        None
    };

    // p_t = eta Q_t + s_t + beta sum_i (W_i + h_i(y_t)) g_i
    let mut p = state.sample.objective_subgradient.clone();
    p.axpy(eta, &state.q)?;
    let h_t = state.sample.constraint_values.as_slice();
    for ((gi, &wi), &hi) in state
        .sample
        .constraint_subgradients
        .iter()
        .zip(state.w.as_slice())
        .zip(h_t)
    {
        p.axpy(beta * (wi + hi), gi)?;
    }

    // y~ = ((alpha + 2 G^2 beta) y_t + eta x_{t+1} - p_t) / (alpha + 2 G^2 beta + eta)
    let prox = if problem.num_constraints() == 0 {
        alpha
    } else {
        alpha + 2.0 * g * g * beta
    };
    let denom = prox + eta;
    let mut y_tilde = state.y.scale(prox / denom);
    y_tilde.axpy(eta / denom, &x_next)?;
    y_tilde.axpy(-1.0 / denom, &p)?;

    let clock = Stopwatch::start();
    let y_next = problem.auxiliary.project(&y_tilde)?;
    state.stats.projection_calls += 1;
    state.stats.projection_time += clock.elapsed();

    let gap_vec = y_next.sub(&x_next)?;
    state.q.axpy(1.0, &gap_vec)?;

    let clock = Stopwatch::start();
    let next_sample = sample_subgradients(
        problem.objective.as_ref(),
        &problem.constraints,
        &y_next,
        rng,
    )?;
    state.stats.subgrad_calls += 1;
    state.stats.subgrad_time += clock.elapsed();

    // Multiplier update uses the cached g_{i,t}, h_i(y_t) and the fresh h_i(y_{t+1}).
    if !state.w.is_empty() {
        let dy = y_next.sub(&state.y)?;
        let h_next = next_sample.constraint_values.as_slice();
        let mut w_next = Vec::with_capacity(state.w.len());
        for i in 0..state.w.len() {
            let lin = state.w.0[i] + h_t[i] + state.sample.constraint_subgradients[i].inner(&dy)?;
            w_next.push(lin.max((-h_next[i]).max(0.0)));
        }
        state.w = ConstraintVec(w_next);
    }

    state.sum_x.axpy(1.0, &x_next)?;
    state.sum_y.axpy(1.0, &y_next)?;
    abs_accumulate(&mut state.abs_sum, &x_next);
    abs_accumulate(&mut state.abs_sum, &y_next);
    state.x = x_next.clone();
    state.y = y_next;
    state.sample = next_sample;
    state.t += 1;

    Ok(StepTrace {
        x_next,
        p,
        y_tilde,
        lmo_gap,
    })
}

/// Runs `T - 1` iterations from a fresh state seeded by `seed`.
pub fn run(
    problem: &ProblemInstance,
    params: &SolverParams,
    seed: u64,
    options: &RunOptions,
) -> Result<RunReport> {
    params.validate()?;
    let clock = Stopwatch::start();
    let mut rng = OracleRng::seed_from_u64(seed);
    let mut state = init_state(problem, &mut rng)?;
    let schedule = options.record.times(params.horizon);
    let mut next_record = schedule.iter().peekable();
    let mut report = RunReport::new(params.horizon, Some(*params), seed, problem.shape());

    let mut last_gap = None;
    loop {
        report.observe(&state);
        if next_record.peek() == Some(&&state.t) {
            next_record.next();
            let (obj, viol) = problem.evaluate(&state.average_x())?;
            report.rows.push(TraceRow {
                t: state.t,
                obj_avg: obj,
                violation_l2: Some(viol),
                q_norm: Some(state.q.norm()),
                w_norm: Some(state.w.l2_norm()),
                lmo_gap: last_gap,
                wall_ms: clock.elapsed().as_secs_f64() * 1e3,
            });
        }
        if state.t >= params.horizon {
            break;
        }
        last_gap = step(problem, params, &mut state, &mut rng, options.measure_gap)?.lmo_gap;
    }
    report.finish(state);
    Ok(report)
}
