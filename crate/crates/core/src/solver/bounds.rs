//! Closed-form guarantees used as empirical certificates: the objective-gap
//! bound, the constraint-violation bound and the drift-norm bound.

use crate::error::{Error, Result};
use crate::problem::{ProblemConstants, SolverParams};

/// `L^2/(2 T eta) + eta (D^2 + 2 delta)/2 + L^2/(2 alpha) + alpha D^2/(2T) + G^2 D^2 beta / T`
pub fn theorem1_bound(params: &SolverParams, c: &ProblemConstants, horizon: usize) -> f64 {
    let t = horizon as f64;
    let (l, g, d) = (c.lipschitz, c.constraint_bound, c.diameter);
    let (eta, alpha, beta) = (params.eta, params.alpha, params.beta);
    l * l / (2.0 * t * eta)
        + eta * (d * d + 2.0 * params.delta) / 2.0
        + l * l / (2.0 * alpha)
        + alpha * d * d / (2.0 * t)
        + g * g * d * d * beta / t
}

/// The three coefficients of the violation bound `sqrt(A0 + A1 |mu| + A2 |mu|^2) / sqrt(T)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViolationCoefficients {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
}

pub fn violation_coefficients(
    c: &ProblemConstants,
    hstar_norm: f64,
) -> Result<ViolationCoefficients> {
    let (l, g, d, delta) = (c.lipschitz, c.constraint_bound, c.diameter, c.delta);
    if g == 0.0 {
        return Ok(ViolationCoefficients {
            a0: 0.0,
            a1: 0.0,
            a2: 0.0,
        });
    }
    if l == 0.0 {
        return Err(Error::DegenerateConstants(
            "violation bound needs L > 0 when G > 0".into(),
        ));
    }
    let r = (d * d + 2.0 * delta).sqrt();
    let r2 = d * d + 2.0 * delta;
    let a2 = 55.0 * g.powi(3) / l * d * r + 83.0 * g * g * d * d + 8.0 * g.powi(4) / (l * l) * r2;
    let a1 = 16.0 * g.powi(3) / l * r2 + 47.0 * g * g * d * r;
    let h2 = hstar_norm * hstar_norm;
    let hterm = if d > 0.0 {
        47.0 + 8.0 * (g / l) * r / d
    } else {
        47.0
    };
    let a0 = 47.0 * g * l * d * d
        + 47.0 * g * l * d * r
        + 47.0 * g * g * d * d
        + 12.0 * g * g * r2
        + 8.0 * g * g * d * r
        + 8.0 * g.powi(3) / l * d * r
        + h2 * hterm;
    Ok(ViolationCoefficients { a0, a1, a2 })
}

/// Bound on the expected constraint violation `||[h(x_bar_T)]_+||_2` under
/// the tuned schedule. `hstar_norm` defaults to `G D`.
pub fn theorem2_bound(
    c: &ProblemConstants,
    horizon: usize,
    mu_norm: f64,
    hstar_norm: Option<f64>,
) -> Result<f64> {
    if !(mu_norm >= 0.0) {
        return Err(Error::InvalidParams(format!(
            "multiplier norm {mu_norm} is negative"
        )));
    }
    let hstar = hstar_norm.unwrap_or(c.constraint_bound * c.diameter);
    let k = violation_coefficients(c, hstar)?;
    Ok((k.a0 + k.a1 * mu_norm + k.a2 * mu_norm * mu_norm).sqrt() / (horizon as f64).sqrt())
}

/// Which form of the drift-norm bound to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QBoundMode {
    /// The general bound, valid for any positive parameters.
    General,
    /// `B1 sqrt(t) + B2 sqrt(T)`, valid under the tuned schedule.
    ParSel2,
}

/// Multiplier inputs for the drift-norm bound. `lambda_norm` defaults to
/// `L + G |mu|` and `hstar_norm` to `G D`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MultiplierNorms {
    pub mu: f64,
    pub lambda: Option<f64>,
    pub hstar: Option<f64>,
}

pub fn theorem3_qbound(
    params: &SolverParams,
    c: &ProblemConstants,
    t: usize,
    horizon: usize,
    norms: MultiplierNorms,
    mode: QBoundMode,
) -> Result<f64> {
    if t == 0 {
        return Err(Error::InvalidParams("t must be at least 1".into()));
    }
    let (l, g, d, delta) = (c.lipschitz, c.constraint_bound, c.diameter, c.delta);
    let mu = norms.mu;
    let lambda = norms.lambda.unwrap_or(l + g * mu);
    let hstar = norms.hstar.unwrap_or(g * d);
    let r2 = d * d + 2.0 * delta;
    let r = r2.sqrt();
    let tt = t as f64;
    match mode {
        QBoundMode::General => {
            let (eta, alpha, beta) = (params.eta, params.alpha, params.beta);
            // |mu| is zero whenever there are no constraints, so beta's
            // placeholder value never enters.
            let mu_term = if mu == 0.0 {
                0.0
            } else {
                2.0 * mu * mu / (beta * eta)
            };
            let first = (mu_term + l * l / (alpha * eta) + r2).sqrt();
            let second = (2.0 * beta / eta * hstar * hstar
                + 2.0 * g * g * d * d * beta / eta
                + alpha * d * d / eta
                + (l + g * mu).powi(2) / (eta * eta))
                .sqrt();
            Ok(tt.sqrt() * first + second + lambda / eta)
        }
        QBoundMode::ParSel2 => {
            if l == 0.0 || d == 0.0 {
                return Err(Error::DegenerateConstants(
                    "drift bound needs L > 0 and D > 0".into(),
                ));
            }
            let b1 = ((d / l) * (l + 2.0 * g * mu * mu) * r + r2).sqrt();
            let h_term = if g > 0.0 {
                2.0 / (g * l * d) * hstar * hstar
            } else {
                0.0
            };
            let b2 = lambda / l * r
                + (r * (h_term + 2.0 * g * d / l + d) + (l + g * mu).powi(2) * r2 / (l * l)).sqrt();
            Ok(b1 * tt.sqrt() + b2 * (horizon as f64).sqrt())
        }
    }
}
