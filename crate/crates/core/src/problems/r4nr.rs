//! Robust low-rank multivariate regression: `min (1/n) sum_i ||y_i - C x_i||_2`
//! over matrices `C` with nuclear norm at most `gamma`.
//!
//! Text fixture format:
//!
//! ```text
//! r4nr n <n> q <q> p <p> rank <r> laplace <b> gamma <gamma>
//! x
//! <p lines of n values>
//! y
//! <q lines of n values>
//! c_true
//! <q lines of p values>
//! ```

use std::fmt::Write as _;
use std::sync::Arc;

use faer::Mat;
use rand::Rng;
use rand_distr::{Open01, StandardNormal};

use crate::error::{Error, Result};
use crate::oracles::{OracleRng, SubgradientOracle};
use crate::problem::{ProblemConstants, ProblemInstance};
use crate::sets::{nuclear_norm, FullSpace, NuclearBall, NuclearLmoMode};
use crate::space::{Point, Shape};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct R4nrConfig {
    /// Samples.
    pub n: usize,
    /// Response dimension.
    pub q: usize,
    /// Predictor dimension.
    pub p: usize,
    pub rank: usize,
    /// Laplace noise scale.
    pub laplace_scale: f64,
    /// Ball radius; `None` uses `1.2 ||C_true||_*`.
    pub gamma: Option<f64>,
}

impl R4nrConfig {
    /// Small instance that runs in seconds.
    pub fn desk() -> Self {
        R4nrConfig {
            n: 50,
            q: 20,
            p: 30,
            rank: 5,
            laplace_scale: 2.0,
            gamma: None,
        }
    }

    /// Full-size instance: 200 samples, 300 responses, 500 predictors, rank 40.
    pub fn large() -> Self {
        R4nrConfig {
            n: 200,
            q: 300,
            p: 500,
            rank: 40,
            laplace_scale: 2.0,
            gamma: Some(350.0),
        }
    }
}

/// How subgradients of the loss are sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SubgradientMode {
    #[default]
    Full,
    /// Average over `batch` sample indices drawn uniformly with replacement.
    Stochastic { batch: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct R4nrInstance {
    pub n: usize,
    pub q: usize,
    pub p: usize,
    pub rank: usize,
    pub laplace_scale: f64,
    pub gamma: f64,
    /// Predictors, one column per sample (`p x n`).
    pub x: Mat<f64>,
    /// Responses, one column per sample (`q x n`).
    pub y: Mat<f64>,
    /// Coefficient matrix that generated the responses (`q x p`).
    pub c_true: Mat<f64>,
}

fn gaussian_matrix(rows: usize, cols: usize, rng: &mut OracleRng) -> Mat<f64> {
    // row-major fill so the draw order does not depend on storage layout
    let data: Vec<f64> = (0..rows * cols)
        .map(|_| rng.sample(StandardNormal))
        .collect();
    from_row_major(rows, cols, &data)
}

fn from_row_major(rows: usize, cols: usize, data: &[f64]) -> Mat<f64> {
    Mat::from_fn(rows, cols, |i, j| data[i * cols + j])
}

/// Laplace(0, b) by inverting the CDF of a uniform draw on the open interval.
fn laplace(b: f64, rng: &mut OracleRng) -> f64 {
    let u: f64 = rng.sample::<f64, _>(Open01) - 0.5;
    -b * u.signum() * (1.0 - 2.0 * u.abs()).ln()
}

/// Draws predictors, the low-rank coefficient matrix and Laplace noise, in
/// that order, from a stream seeded by `seed`.
pub fn gen_r4nr(cfg: &R4nrConfig, seed: u64) -> Result<R4nrInstance> {
    let R4nrConfig {
        n,
        q,
        p,
        rank,
        laplace_scale,
        gamma,
    } = *cfg;
    if n == 0 || q == 0 || p == 0 || rank == 0 {
        return Err(Error::BadDims(format!(
            "n = {n}, q = {q}, p = {p}, rank = {rank} must be positive"
        )));
    }
    if rank > q.min(p) {
        return Err(Error::BadDims(format!(
            "rank {rank} exceeds min(q, p) = {}",
            q.min(p)
        )));
    }
    if !(laplace_scale >= 0.0) {
        return Err(Error::InvalidParams(format!(
            "Laplace scale {laplace_scale} is negative"
        )));
    }
    let mut rng = <OracleRng as rand::SeedableRng>::seed_from_u64(seed);
    let x = gaussian_matrix(p, n, &mut rng);
    let a = gaussian_matrix(q, rank, &mut rng);
    let b = gaussian_matrix(rank, p, &mut rng);
    let product = a * b;
    let scale = 1.0 / (rank as f64).sqrt();
    let c_true = Mat::from_fn(q, p, |i, j| scale * product[(i, j)]);
    let noise: Vec<f64> = (0..q * n)
        .map(|_| laplace(laplace_scale, &mut rng))
        .collect();
    let y = &c_true * &x + from_row_major(q, n, &noise);
    let gamma = match gamma {
        Some(g) if g > 0.0 => g,
        Some(g) => return Err(Error::InvalidParams(format!("radius {g} must be positive"))),
        None => 1.2 * nuclear_norm(&Point::from_mat(c_true.as_ref()))?,
    };
    Ok(R4nrInstance {
        n,
        q,
        p,
        rank,
        laplace_scale,
        gamma,
        x,
        y,
        c_true,
    })
}

impl R4nrInstance {
    pub fn coefficient_shape(&self) -> Shape {
        Shape::Matrix {
            rows: self.q,
            cols: self.p,
        }
    }

    fn residual_norms(&self, c: &Point, target: &Mat<f64>) -> Result<Vec<f64>> {
        c.ensure_shape(self.coefficient_shape())?;
        let resid = target - c.to_mat() * &self.x;
        Ok((0..self.n).map(|i| resid.col(i).norm_l2()).collect())
    }

    /// `(1/n) sum_i ||y_i - C x_i||_2`
    pub fn value(&self, c: &Point) -> Result<f64> {
        Ok(self.residual_norms(c, &self.y)?.iter().sum::<f64>() / self.n as f64)
    }

    /// The same loss measured against the noiseless responses `C_true x_i`.
    pub fn noiseless_value(&self, c: &Point) -> Result<f64> {
        let clean = &self.c_true * &self.x;
        Ok(self.residual_norms(c, &clean)?.iter().sum::<f64>() / self.n as f64)
    }

    /// `-sum_{i in indices} (r_i / ||r_i||) x_iᵀ`, row-major.
    fn term_sum(&self, c: &Point, indices: &[usize]) -> Result<Vec<f64>> {
        c.ensure_shape(self.coefficient_shape())?;
        let cm = c.to_mat();
        let mut out = vec![0.0; self.q * self.p];
        for &i in indices {
            let r = self.y.col(i) - &cm * self.x.col(i);
            let norm = r.norm_l2();
            if norm > 0.0 {
                for a in 0..self.q {
                    let w = r[a] / norm;
                    for b in 0..self.p {
                        out[a * self.p + b] -= w * self.x[(b, i)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// `-(1/n) sum_i (r_i / ||r_i||) x_i^T`, with zero residuals contributing 0.
    pub fn subgradient(
        &self,
        c: &Point,
        mode: SubgradientMode,
        rng: &mut OracleRng,
    ) -> Result<Point> {
        let (indices, count): (Vec<usize>, usize) = match mode {
            SubgradientMode::Full => ((0..self.n).collect(), self.n),
            SubgradientMode::Stochastic { batch } => {
                if batch == 0 {
                    return Err(Error::InvalidParams("batch size must be positive".into()));
                }
                (
                    (0..batch).map(|_| rng.random_range(0..self.n)).collect(),
                    batch,
                )
            }
        };
        let mut sum = self.term_sum(c, &indices)?;
        sum.iter_mut().for_each(|v| *v /= count as f64);
        Point::matrix(self.q, self.p, sum)
    }

    /// `sqrt((1/n) sum_i ||x_i||^2)`
    pub fn lipschitz(&self) -> f64 {
        (self.x.squared_norm_l2() / self.n as f64).sqrt()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "r4nr n {} q {} p {} rank {} laplace {} gamma {}\n",
            self.n, self.q, self.p, self.rank, self.laplace_scale, self.gamma
        );
        for (name, m) in [("x", &self.x), ("y", &self.y), ("c_true", &self.c_true)] {
            out.push_str(name);
            out.push('\n');
            for i in 0..m.nrows() {
                let line: Vec<String> = (0..m.ncols()).map(|j| m[(i, j)].to_string()).collect();
                let _ = writeln!(out, "{}", line.join(" "));
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let err = |line: usize, msg: &str| Error::Parse {
            line: line + 1,
            msg: msg.into(),
        };
        let (hl, header) = lines.next().ok_or_else(|| err(0, "empty fixture"))?;
        let tok: Vec<&str> = header.split_whitespace().collect();
        if tok.len() != 13 || tok[0] != "r4nr" {
            return Err(err(
                hl,
                "expected `r4nr n .. q .. p .. rank .. laplace .. gamma ..`",
            ));
        }
        let keys = ["n", "q", "p", "rank", "laplace", "gamma"];
        let mut vals = [0f64; 6];
        for (k, key) in keys.iter().enumerate() {
            if tok[1 + 2 * k] != *key {
                return Err(err(hl, &format!("expected key `{key}`")));
            }
            vals[k] = tok[2 + 2 * k]
                .parse()
                .map_err(|_| err(hl, &format!("bad value for `{key}`")))?;
        }
        let [n, q, p, rank] = [vals[0], vals[1], vals[2], vals[3]].map(|v| v as usize);
        let mut read_block = |name: &str, rows: usize, cols: usize| -> Result<Mat<f64>> {
            let (ln, label) = lines
                .next()
                .ok_or_else(|| err(0, &format!("missing block `{name}`")))?;
            if label.trim() != name {
                return Err(err(ln, &format!("expected block `{name}`")));
            }
            let mut data = Vec::with_capacity(rows * cols);
            for _ in 0..rows {
                let (ln, line) = lines
                    .next()
                    .ok_or_else(|| err(0, &format!("block `{name}` is short")))?;
                let row: Vec<f64> = line
                    .split_whitespace()
                    .map(|t| t.parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| err(ln, "bad number"))?;
                if row.len() != cols {
                    return Err(err(
                        ln,
                        &format!("expected {cols} values, found {}", row.len()),
                    ));
                }
                data.extend(row);
            }
            Ok(from_row_major(rows, cols, &data))
        };
        let x = read_block("x", p, n)?;
        let y = read_block("y", q, n)?;
        let c_true = read_block("c_true", q, p)?;
        Ok(R4nrInstance {
            n,
            q,
            p,
            rank,
            laplace_scale: vals[4],
            gamma: vals[5],
            x,
            y,
            c_true,
        })
    }
}

struct R4nrObjective {
    inst: Arc<R4nrInstance>,
    mode: SubgradientMode,
    lipschitz: f64,
}

impl SubgradientOracle for R4nrObjective {
    fn value(&self, y: &Point) -> Result<f64> {
        self.inst.value(y)
    }

    fn subgradient(&self, y: &Point, rng: &mut OracleRng) -> Result<Point> {
        self.inst.subgradient(y, self.mode, rng)
    }

    fn norm_bound(&self) -> Option<f64> {
        match self.mode {
            SubgradientMode::Full | SubgradientMode::Stochastic { batch: 1 } => {
                Some(self.lipschitz)
            }
            SubgradientMode::Stochastic { .. } => None,
        }
    }
}

/// Nuclear ball as the feasible set, the whole space as the auxiliary set,
/// started at the zero matrix. The exact ball projection is attached for
/// projected baselines.
pub fn build_r4nr(
    inst: Arc<R4nrInstance>,
    lmo: NuclearLmoMode,
    mode: SubgradientMode,
) -> Result<ProblemInstance> {
    let shape = inst.coefficient_shape();
    let ball = NuclearBall::new(inst.gamma, inst.q, inst.p)?;
    let constants = ProblemConstants::unconstrained(inst.lipschitz(), ball.diameter());
    let lipschitz = inst.lipschitz();
    ProblemInstance::new(
        Arc::new(R4nrObjective {
            inst,
            mode,
            lipschitz,
        }),
        Vec::new(),
        Arc::new(ball.clone().with_mode(lmo)),
        Arc::new(FullSpace::new(shape)),
        constants,
        Point::zeros(shape),
    )?
    .with_feasible_projector(Arc::new(ball))
}
