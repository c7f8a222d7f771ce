//! Browser bindings: Min-Flow trajectories, nuclear-ball projection and the
//! Lipschitz extension curve. The plain functions are usable natively; the
//! `wasm_bindgen` wrappers only convert errors.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::E;

use pffc::problems::{
    build_minflow, default_network, mcshane_whitney_extend_1d, CoefficientRule, Formulation,
};
use pffc::sets::{nuclear_norm, singular_values, water_filling_threshold, NuclearBall};
use pffc::solver::{configure_parsel2, run, RecordSchedule, RunOptions};
use pffc::{Point, Projector};
use wasm_bindgen::prelude::*;

/// Recorded rows of one solver run, column by column.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Trajectory {
    t: Vec<f64>,
    objective: Vec<f64>,
    violation: Vec<f64>,
    q_norm: Vec<f64>,
    optimum: f64,
    final_flow: Vec<f64>,
    capacities: Vec<f64>,
}

#[wasm_bindgen]
impl Trajectory {
    #[wasm_bindgen(getter)]
    pub fn t(&self) -> Vec<f64> {
        self.t.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn objective(&self) -> Vec<f64> {
        self.objective.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn violation(&self) -> Vec<f64> {
        self.violation.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn q_norm(&self) -> Vec<f64> {
        self.q_norm.clone()
    }

    /// LP reference value of the instance.
    #[wasm_bindgen(getter)]
    pub fn optimum(&self) -> f64 {
        self.optimum
    }

    /// Averaged flow after the last iteration, one entry per edge.
    #[wasm_bindgen(getter)]
    pub fn final_flow(&self) -> Vec<f64> {
        self.final_flow.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn capacities(&self) -> Vec<f64> {
        self.capacities.clone()
    }
}

/// Runs the tuned schedule on the shipped network, recording about
/// `points` rows.
pub fn minflow_run(formulation: &str, horizon: usize, points: usize) -> Result<Trajectory, String> {
    let f: Formulation = formulation
        .parse()
        .map_err(|e: pffc::Error| e.to_string())?;
    if horizon == 0 || horizon > 200_000 {
        return Err(format!("T = {horizon} is outside 1..=200000"));
    }
    let net = default_network();
    let capacities = net.capacities();
    let (_, problem) =
        build_minflow(net, CoefficientRule::Default, f).map_err(|e| e.to_string())?;
    let params = configure_parsel2(horizon, &problem.constants).map_err(|e| e.to_string())?;
    let stride = horizon.div_ceil(points.max(2)).max(1);
    let options = RunOptions {
        record: RecordSchedule::Stride(stride),
        measure_gap: false,
    };
    let report = run(&problem, &params, 0, &options).map_err(|e| e.to_string())?;
    let rows = &report.rows;
    Ok(Trajectory {
        t: rows.iter().map(|r| r.t as f64).collect(),
        objective: rows.iter().map(|r| r.obj_avg).collect(),
        violation: rows.iter().map(|r| r.violation_l2.unwrap_or(0.0)).collect(),
        q_norm: rows.iter().map(|r| r.q_norm.unwrap_or(0.0)).collect(),
        optimum: problem.optimum.map_or(f64::NAN, |o| o.value()),
        final_flow: report.final_average.into_vec(),
        capacities,
    })
}

/// Result of projecting a matrix onto the nuclear-norm ball.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Projection {
    entries: Vec<f64>,
    sigma_in: Vec<f64>,
    sigma_out: Vec<f64>,
    threshold: f64,
}

#[wasm_bindgen]
impl Projection {
    /// Projected matrix, row-major.
    #[wasm_bindgen(getter)]
    pub fn entries(&self) -> Vec<f64> {
        self.entries.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn sigma_in(&self) -> Vec<f64> {
        self.sigma_in.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn sigma_out(&self) -> Vec<f64> {
        self.sigma_out.clone()
    }

    /// Amount subtracted from every singular value.
    #[wasm_bindgen(getter)]
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    #[wasm_bindgen(getter)]
    pub fn nuclear_norm(&self) -> f64 {
        self.sigma_out.iter().sum()
    }
}

pub fn nuclear_project(
    entries: &[f64],
    rows: usize,
    cols: usize,
    gamma: f64,
) -> Result<Projection, String> {
    let z = Point::matrix(rows, cols, entries.to_vec()).map_err(|e| e.to_string())?;
    let ball = NuclearBall::new(gamma, rows, cols).map_err(|e| e.to_string())?;
    let sigma_in = singular_values(&z).map_err(|e| e.to_string())?;
    let p = ball.project(&z).map_err(|e| e.to_string())?;
    let sigma_out = singular_values(&p).map_err(|e| e.to_string())?;
    debug_assert!(nuclear_norm(&p).is_ok_and(|n| n <= gamma * (1.0 + 1e-9)));
    Ok(Projection {
        threshold: water_filling_threshold(&sigma_in, gamma),
        sigma_in,
        sigma_out,
        entries: p.into_vec(),
    })
}

/// `(x, f(x), F(x))` triples flattened, where `F` is the extension of `f`
/// from `[lo, hi]`. `f` is `NaN` outside the interval. Functions: `expmax`
/// (`max{e^-x, e^x}`), `square`, `abs`.
pub fn extension_samples(
    function: &str,
    lo: f64,
    hi: f64,
    from: f64,
    to: f64,
    samples: usize,
) -> Result<Vec<f64>, String> {
    if !(lo < hi) || !(from < to) || samples < 2 {
        return Err("need lo < hi, from < to and at least 2 samples".into());
    }
    let edge = lo.abs().max(hi.abs());
    let (f, lip): (fn(f64) -> f64, f64) = match function {
        "expmax" => (|x: f64| (-x).exp().max(x.exp()), edge.exp()),
        "square" => (|x: f64| x * x, 2.0 * edge),
        "abs" => (f64::abs, 1.0),
        other => return Err(format!("unknown function {other:?}")),
    };
    let mut out = Vec::with_capacity(3 * samples);
    for i in 0..samples {
        let x = from + (to - from) * i as f64 / (samples - 1) as f64;
        let inside = if (lo..=hi).contains(&x) {
            f(x)
        } else {
            f64::NAN
        };
        out.extend([x, inside, mcshane_whitney_extend_1d(f, lo, hi, lip, x)]);
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn minflow_trajectory(
    formulation: &str,
    horizon: usize,
    points: usize,
) -> Result<Trajectory, JsError> {
    minflow_run(formulation, horizon, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn project_nuclear(
    entries: Vec<f64>,
    rows: usize,
    cols: usize,
    gamma: f64,
) -> Result<Projection, JsError> {
    nuclear_project(&entries, rows, cols, gamma).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn extension_curve(
    function: &str,
    lo: f64,
    hi: f64,
    from: f64,
    to: f64,
    samples: usize,
) -> Result<Vec<f64>, JsError> {
    extension_samples(function, lo, hi, from, to, samples).map_err(|e| JsError::new(&e))
}

/// `2e`, the extended value of `max{e^-x, e^x}` at `x = +-2` from `[-1, 1]`.
#[wasm_bindgen]
pub fn expmax_reference() -> f64 {
    2.0 * E
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trajectory_rows_line_up() {
        let tr = minflow_run("F3", 400, 40).unwrap();
        assert_eq!(tr.t.len(), tr.objective.len());
        assert_eq!(tr.t.len(), tr.violation.len());
        assert_eq!(*tr.t.last().unwrap(), 400.0);
        assert_eq!(tr.final_flow.len(), 9);
        assert!((tr.objective.last().unwrap() - tr.optimum).abs() < 0.1 * tr.optimum);
        assert!(minflow_run("F9", 10, 10).is_err());
    }

    #[test]
    fn capacitated_run_respects_capacities() {
        let tr = minflow_run("f1", 300, 10).unwrap();
        for (x, k) in tr.final_flow.iter().zip(&tr.capacities) {
            assert!(*x <= k + 1e-9);
        }
        assert!(tr.violation.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn diagonal_projection() {
        let p = nuclear_project(&[3.0, 0.0, 0.0, 1.0], 2, 2, 2.0).unwrap();
        assert_eq!(p.threshold, 1.0);
        assert!((p.entries[0] - 2.0).abs() < 1e-12 && p.entries[3].abs() < 1e-12);
        assert!((p.nuclear_norm() - 2.0).abs() < 1e-12);
        assert!(nuclear_project(&[1.0, 2.0], 2, 2, 1.0).is_err());
    }

    #[test]
    fn extension_curve_matches_closed_form() {
        let v = extension_samples("expmax", -1.0, 1.0, -2.0, 2.0, 5).unwrap();
        let xs: Vec<f64> = v.chunks(3).map(|c| c[0]).collect();
        assert_eq!(xs, vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert!((v[2] - expmax_reference()).abs() < 1e-9);
        assert!(v[1].is_nan());
        assert!((v[8] - 1.0).abs() < 1e-9 && (v[7] - 1.0).abs() < 1e-12);
        assert!(extension_samples("cos", -1.0, 1.0, -2.0, 2.0, 5).is_err());
    }
}
