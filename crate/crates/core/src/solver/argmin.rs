//! Independent reference for the auxiliary update: numerically minimize the
//! strongly convex model whose minimizer the closed-form step claims to be.

use crate::error::{Error, Result};
use crate::problem::{ProblemInstance, SolverParams};
use crate::space::Point;

use super::SolverState;

/// Model minimized by the auxiliary update, coded term by term:
///
/// ```text
/// phi(y) = eta <Q_t, y - x_{t+1}> + <s_t, y - y_t>
///        + beta sum_i (W_i + h_i(y_t)) (h_i(y_t) + <g_i, y - y_t>)
///        + eta/2 ||y - x_{t+1}||^2 + (alpha + 2 G^2 beta)/2 ||y - y_t||^2
/// ```
struct Model<'a> {
    eta: f64,
    beta: f64,
    prox: f64,
    q: &'a Point,
    s: &'a Point,
    x_next: &'a Point,
    y_t: &'a Point,
    weights: Vec<f64>,
    h: &'a [f64],
    g: &'a [Point],
}

impl Model<'_> {
    fn value(&self, y: &Point) -> Result<f64> {
        let dy = y.sub(self.y_t)?;
        let dx = y.sub(self.x_next)?;
        let mut v = self.eta * self.q.inner(&dx)? + self.s.inner(&dy)?;
        for ((c, hi), gi) in self.weights.iter().zip(self.h).zip(self.g) {
            v += self.beta * c * (hi + gi.inner(&dy)?);
        }
        Ok(v + 0.5 * self.eta * dx.norm_squared() + 0.5 * self.prox * dy.norm_squared())
    }

    fn gradient(&self, y: &Point) -> Result<Point> {
        let mut grad = self.s.clone();
        grad.axpy(self.eta, self.q)?;
        for (c, gi) in self.weights.iter().zip(self.g) {
            grad.axpy(self.beta * c, gi)?;
        }
        grad.axpy(self.eta, &y.sub(self.x_next)?)?;
        grad.axpy(self.prox, &y.sub(self.y_t)?)?;
        Ok(grad)
    }
}

/// Minimizes the auxiliary-update model over `Y` by projected gradient
/// descent with step `1 / (2 (eta + alpha + 2 G^2 beta))`, starting from `y_t`,
/// until the gradient mapping falls below `1e-10` (relative to the problem
/// scale). Meant for small dimensions.
pub fn lemma4_argmin_oracle(
    problem: &ProblemInstance,
    params: &SolverParams,
    state: &SolverState,
    x_next: &Point,
) -> Result<Point> {
    let g = problem.constants.constraint_bound;
    let m = problem.num_constraints();
    let prox = if m == 0 {
        params.alpha
    } else {
        params.alpha + 2.0 * g * g * params.beta
    };
    let h = state.sample.constraint_values.as_slice();
    let model = Model {
        eta: params.eta,
        beta: params.beta,
        prox,
        q: &state.q,
        s: &state.sample.objective_subgradient,
        x_next,
        y_t: &state.y,
        weights: state
            .w
            .as_slice()
            .iter()
            .zip(h)
            .map(|(w, hi)| w + hi)
            .collect(),
        h,
        g: &state.sample.constraint_subgradients,
    };
    let smooth = params.eta + prox;
    let step = 0.5 / smooth;
    let scale = 1.0 + state.y.norm() + x_next.norm() + model.gradient(&state.y)?.norm() / smooth;
    let mut y = problem.auxiliary.project(&state.y)?;
    let mut last_value = model.value(&y)?;
    for _ in 0..20_000 {
        let grad = model.gradient(&y)?;
        let mut trial = y.clone();
        trial.axpy(-step, &grad)?;
        let next = problem.auxiliary.project(&trial)?;
        let mapping = next.distance(&y)? / step;
        let value = model.value(&next)?;
        if value > last_value + 1e-12 * (1.0 + last_value.abs()) {
            return Err(Error::OracleNotConverged(format!(
                "model value increased from {last_value} to {value}"
            )));
        }
        last_value = value;
        y = next;
        if mapping <= 1e-10 * smooth * scale {
            return Ok(y);
        }
    }
    Err(Error::OracleNotConverged(
        "projected gradient did not reach the tolerance in 20000 iterations".into(),
    ))
}
