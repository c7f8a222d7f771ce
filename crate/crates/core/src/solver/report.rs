use std::io::{self, Write};

use crate::oracles::OracleStats;
use crate::problem::SolverParams;
use crate::space::{ConstraintVec, Point, Shape};

use super::SolverState;

pub const CSV_HEADER: &str = "t,obj_avg,violation_l2,q_norm,w_norm,lmo_gap,wall_ms";

/// Which iterations get a trajectory row. The last iteration is always recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RecordSchedule {
    /// Every iteration up to `T = 10^4`, otherwise a log grid.
    #[default]
    Auto,
    /// `t = 1, 1 + s, 1 + 2s, ...`
    Stride(usize),
    /// Roughly `per_decade` geometrically spaced iterations per decade.
    Log { per_decade: usize },
}

impl RecordSchedule {
    pub fn times(&self, horizon: usize) -> Vec<usize> {
        let mut out: Vec<usize> = match *self {
            RecordSchedule::Auto if horizon <= 10_000 => (1..=horizon).collect(),
            RecordSchedule::Auto => log_grid(horizon, 20),
            RecordSchedule::Stride(s) => (1..=horizon).step_by(s.max(1)).collect(),
            RecordSchedule::Log { per_decade } => log_grid(horizon, per_decade.max(1)),
        };
        if out.last() != Some(&horizon) {
            out.push(horizon);
        }
        out
    }
}

fn log_grid(horizon: usize, per_decade: usize) -> Vec<usize> {
    let mut out = vec![1];
    let ratio = 10f64.powf(1.0 / per_decade as f64);
    let mut x = 1.0f64;
    loop {
        x *= ratio;
        let t = x.round() as usize;
        if t > horizon {
            break;
        }
        if t > *out.last().unwrap() {
            out.push(t);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunOptions {
    pub record: RecordSchedule,
    /// Measure the LMO gap against the set's exact minimum at every call.
    pub measure_gap: bool,
}

/// One trajectory row. Fields that do not apply to a method are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub t: usize,
    /// `f(x_bar_t)`
    pub obj_avg: f64,
    /// `||[h(x_bar_t)]_+||_2`
    pub violation_l2: Option<f64>,
    pub q_norm: Option<f64>,
    pub w_norm: Option<f64>,
    pub lmo_gap: Option<f64>,
    pub wall_ms: f64,
}

impl TraceRow {
    pub fn csv_line(&self) -> String {
        fn opt(v: Option<f64>) -> String {
            v.map(|x| x.to_string()).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{}",
            self.t,
            self.obj_avg,
            opt(self.violation_l2),
            opt(self.q_norm),
            opt(self.w_norm),
            opt(self.lmo_gap),
            self.wall_ms
        )
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub horizon: usize,
    /// Parameters of the primal-dual method; `None` for baselines.
    pub params: Option<SolverParams>,
    pub seed: u64,
    pub rows: Vec<TraceRow>,
    /// `x_bar_T`
    pub final_average: Point,
    /// `y_bar_T`
    pub final_y_average: Point,
    pub final_q: Point,
    pub final_w: ConstraintVec,
    pub sum_x: Point,
    pub sum_y: Point,
    abs_sum: Point,
    /// `min_{i,t} W_{i,t}` over every iteration (`+inf` without constraints).
    pub min_w: f64,
    /// `min_{i,t} W_{i,t} + h_i(y_t)` over every iteration.
    pub min_w_plus_h: f64,
    /// `||Q_t||` for `t = 1..=T`.
    pub q_norms: Vec<f64>,
    /// Iterates that failed the feasible-set membership test, when checked.
    pub infeasible_iterates: Option<usize>,
    pub stats: OracleStats,
}

impl RunReport {
    pub(crate) fn new(
        horizon: usize,
        params: Option<SolverParams>,
        seed: u64,
        shape: Shape,
    ) -> Self {
        RunReport {
            horizon,
            params,
            seed,
            rows: Vec::new(),
            final_average: Point::zeros(shape),
            final_y_average: Point::zeros(shape),
            final_q: Point::zeros(shape),
            final_w: ConstraintVec::default(),
            sum_x: Point::zeros(shape),
            sum_y: Point::zeros(shape),
            abs_sum: Point::zeros(shape),
            min_w: f64::INFINITY,
            min_w_plus_h: f64::INFINITY,
            q_norms: Vec::new(),
            infeasible_iterates: None,
            stats: OracleStats::default(),
        }
    }

    pub(crate) fn observe(&mut self, state: &SolverState) {
        let (w, wh) = state.multiplier_margins();
        self.min_w = self.min_w.min(w);
        self.min_w_plus_h = self.min_w_plus_h.min(wh);
        self.q_norms.push(state.q.norm());
    }

    pub(crate) fn finish_sums(&mut self, sum_x: Point, sum_y: Point, abs_sum: Point, t: usize) {
        self.final_average = sum_x.scale(1.0 / t as f64);
        self.final_y_average = sum_y.scale(1.0 / t as f64);
        self.sum_x = sum_x;
        self.sum_y = sum_y;
        self.abs_sum = abs_sum;
    }

    pub(crate) fn finish(&mut self, state: SolverState) {
        self.final_average = state.average_x();
        self.final_y_average = state.average_y();
        self.final_q = state.q;
        self.final_w = state.w;
        self.sum_x = state.sum_x;
        self.sum_y = state.sum_y;
        self.abs_sum = state.abs_sum;
        self.stats = state.stats;
    }

    pub fn max_q_norm(&self) -> f64 {
        self.q_norms.iter().copied().fold(0.0, f64::max)
    }

    pub fn final_row(&self) -> Option<&TraceRow> {
        self.rows.last()
    }

    /// Largest componentwise relative discrepancy between `Q_T` and
    /// `T (y_bar_T - x_bar_T)`, each component scaled by `sum_t |x_t| + |y_t|`.
    pub fn drift_identity_error(&self) -> f64 {
        let q = self.final_q.as_slice();
        let sy = self.sum_y.as_slice();
        let sx = self.sum_x.as_slice();
        let scale = self.abs_sum.as_slice();
        let mut worst = 0.0f64;
        for i in 0..q.len() {
            let diff = (q[i] - (sy[i] - sx[i])).abs();
            if diff > 0.0 {
                worst = worst.max(diff / scale[i].max(f64::MIN_POSITIVE));
            }
        }
        worst
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for row in &self.rows {
            writeln!(out, "{}", row.csv_line())?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }
}
