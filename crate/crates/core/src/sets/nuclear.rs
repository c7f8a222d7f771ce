//! Nuclear-norm ball `{c : ||c||_* <= gamma}` over `rows x cols` matrices.

use faer::Mat;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::oracles::{LinearMinimizer, LmoQuery, OracleRng, Projector};
use crate::space::{Point, Shape};

/// How the ball answers linear minimization queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuclearLmoMode {
    /// Top singular pair from a full SVD.
    Exact,
    /// Top singular pair from a fixed number of power iterations.
    Power { iters: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct NuclearBall {
    gamma: f64,
    rows: usize,
    cols: usize,
    mode: NuclearLmoMode,
}

/// Thin SVD `z = U diag(s) Vᵀ` with singular values in descending order.
pub(crate) struct Decomposition {
    pub u: Mat<f64>,
    pub s: Vec<f64>,
    pub v: Mat<f64>,
}

pub(crate) fn svd(z: &Point) -> Result<Decomposition> {
    let d = z.to_mat().thin_svd().map_err(|_| Error::SvdFailure)?;
    Ok(Decomposition {
        u: d.U().to_owned(),
        s: d.S().column_vector().iter().copied().collect(),
        v: d.V().to_owned(),
    })
}

pub fn singular_values(z: &Point) -> Result<Vec<f64>> {
    let mut s = z
        .to_mat()
        .singular_values()
        .map_err(|_| Error::SvdFailure)?;
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

pub fn nuclear_norm(z: &Point) -> Result<f64> {
    Ok(singular_values(z)?.iter().sum())
}

/// Threshold `zeta >= 0` with `sum_i max{0, sigma_i - zeta} = gamma`, solved
/// exactly on the active prefix of the descending singular values.
/// Returns 0 when `sum_i sigma_i <= gamma` (nothing to shrink).
pub fn water_filling_threshold(sigmas: &[f64], gamma: f64) -> f64 {
    let mut s: Vec<f64> = sigmas.iter().map(|v| v.max(0.0)).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    let total: f64 = s.iter().sum();
    if total <= gamma {
        return 0.0;
    }
    if gamma <= 0.0 {
        return s.first().copied().unwrap_or(0.0);
    }
    let mut prefix = 0.0;
    for k in 0..s.len() {
        prefix += s[k];
        let zeta = (prefix - gamma) / (k + 1) as f64;
        let next = s.get(k + 1).copied().unwrap_or(0.0);
        if zeta < s[k] && zeta >= next {
            return zeta.max(0.0);
        }
    }
    // Unreachable for finite input; the last prefix always qualifies.
    ((total - gamma) / s.len() as f64).max(0.0)
}

impl NuclearBall {
    pub fn new(gamma: f64, rows: usize, cols: usize) -> Result<Self> {
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(Error::BadDims(format!(
                "nuclear radius {gamma} must be nonnegative"
            )));
        }
        if rows == 0 || cols == 0 {
            return Err(Error::BadDims(format!("{rows}x{cols} nuclear ball")));
        }
        Ok(NuclearBall {
            gamma,
            rows,
            cols,
            mode: NuclearLmoMode::Exact,
        })
    }

    pub fn with_mode(mut self, mode: NuclearLmoMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn mode(&self) -> NuclearLmoMode {
        self.mode
    }

    pub fn shape(&self) -> Shape {
        Shape::Matrix {
            rows: self.rows,
            cols: self.cols,
        }
    }

    /// Euclidean diameter bound `2 gamma`.
    pub fn diameter(&self) -> f64 {
        2.0 * self.gamma
    }

    /// `-gamma u1 v1ᵀ` from a full SVD, achieving `<c, z> = -gamma sigma_1`.
    /// Returns the zero matrix when `z = 0` or `gamma = 0`.
    pub fn lmo_exact(&self, z: &Point) -> Result<Point> {
        z.ensure_shape(self.shape())?;
        let dec = svd(z)?;
        let (idx, &s1) = dec
            .s
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .ok_or(Error::SvdFailure)?;
        if s1 <= 0.0 || self.gamma == 0.0 {
            return Ok(Point::zeros(self.shape()));
        }
        let u: Vec<f64> = dec.u.col(idx).iter().copied().collect();
        let v: Vec<f64> = dec.v.col(idx).iter().copied().collect();
        Ok(rank_one(-self.gamma, &u, &v))
    }

    /// Rank-one `-gamma u vᵀ` from `iters` rounds of alternating power
    /// iteration started at a Gaussian vector.
    pub fn lmo_power(&self, z: &Point, iters: usize, rng: &mut OracleRng) -> Result<Point> {
        z.ensure_shape(self.shape())?;
        let (rows, cols) = (self.rows, self.cols);
        let zs = z.as_slice();
        let mut v: Vec<f64> = (0..cols).map(|_| rng.sample(StandardNormal)).collect();
        let mut u = vec![0.0; rows];
        for _ in 0..iters.max(1) {
            for (i, ui) in u.iter_mut().enumerate() {
                *ui = (0..cols).map(|j| zs[i * cols + j] * v[j]).sum();
            }
            if !normalize(&mut u) || self.gamma == 0.0 {
                return Ok(Point::zeros(self.shape()));
            }
            for (j, vj) in v.iter_mut().enumerate() {
                *vj = (0..rows).map(|i| zs[i * cols + j] * u[i]).sum();
            }
            if !normalize(&mut v) {
                return Ok(Point::zeros(self.shape()));
            }
        }
        Ok(rank_one(-self.gamma, &u, &v))
    }

    /// Euclidean projection by soft-thresholding the singular values.
    pub fn project_exact(&self, z: &Point) -> Result<Point> {
        z.ensure_shape(self.shape())?;
        let dec = svd(z)?;
        if dec.s.iter().sum::<f64>() <= self.gamma {
            return Ok(z.clone());
        }
        let zeta = water_filling_threshold(&dec.s, self.gamma);
        let mut out = vec![0.0; self.rows * self.cols];
        for (k, s) in dec.s.iter().enumerate() {
            let shrunk = s - zeta;
            if shrunk > 0.0 {
                for i in 0..self.rows {
                    let a = shrunk * dec.u[(i, k)];
                    for j in 0..self.cols {
                        out[i * self.cols + j] += a * dec.v[(j, k)];
                    }
                }
            }
        }
        Point::matrix(self.rows, self.cols, out)
    }

    fn member(&self, x: &Point, tol: f64) -> bool {
        x.shape() == self.shape() && nuclear_norm(x).is_ok_and(|n| n <= self.gamma + tol)
    }
}

/// Scales `x` to unit length; false when it is zero.
fn normalize(x: &mut [f64]) -> bool {
    let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if n == 0.0 {
        return false;
    }
    x.iter_mut().for_each(|v| *v /= n);
    true
}

fn rank_one(scale: f64, u: &[f64], v: &[f64]) -> Point {
    let mut data = Vec::with_capacity(u.len() * v.len());
    for ui in u {
        for vj in v {
            data.push(scale * ui * vj);
        }
    }
    Point::matrix(u.len(), v.len(), data).expect("rank-one dims")
}

impl LinearMinimizer for NuclearBall {
    fn shape(&self) -> Shape {
        NuclearBall::shape(self)
    }

    fn lmo(&self, query: &LmoQuery, rng: &mut OracleRng) -> Result<Point> {
        match self.mode {
            NuclearLmoMode::Exact => self.lmo_exact(&query.direction),
            NuclearLmoMode::Power { iters } => self.lmo_power(&query.direction, iters, rng),
        }
    }

    fn exact_min(&self, v: &Point) -> Result<f64> {
        v.ensure_shape(self.shape())?;
        let s1 = singular_values(v)?.first().copied().unwrap_or(0.0);
        Ok(-self.gamma * s1)
    }

    fn contains(&self, x: &Point, tol: f64) -> Option<bool> {
        Some(self.member(x, tol))
    }
}

impl Projector for NuclearBall {
    fn shape(&self) -> Shape {
        NuclearBall::shape(self)
    }

    fn project(&self, v: &Point) -> Result<Point> {
        self.project_exact(v)
    }

    fn contains(&self, x: &Point, tol: f64) -> Option<bool> {
        Some(self.member(x, tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::measure_lmo_gap;
    use rand::SeedableRng;

    fn diag(a: f64, b: f64) -> Point {
        Point::matrix(2, 2, vec![a, 0.0, 0.0, b]).unwrap()
    }

    fn random_matrix(rows: usize, cols: usize, rng: &mut OracleRng) -> Point {
        Point::from_shape_fn(Shape::Matrix { rows, cols }, |_| rng.sample(StandardNormal))
    }

    /// A random member of the ball: random direction rescaled to a random
    /// fraction of the radius in nuclear norm.
    fn random_member(ball: &NuclearBall, rng: &mut OracleRng) -> Point {
        let Shape::Matrix { rows, cols } = ball.shape() else {
            unreachable!()
        };
        let m = random_matrix(rows, cols, rng);
        let n = nuclear_norm(&m).unwrap();
        let r: f64 = rng.random_range(0.0..1.0);
        m.scale(ball.gamma() * r / n)
    }

    #[test]
    fn exact_lmo_on_diagonal() {
        let ball = NuclearBall::new(3.0, 2, 2).unwrap();
        let z = diag(2.0, 1.0);
        let c = ball.lmo_exact(&z).unwrap();
        assert!((c.inner(&z).unwrap() + 6.0).abs() < 1e-12);
        let expected = diag(-3.0, 0.0);
        assert!(c.distance(&expected).unwrap() < 1e-12);

        let mut rng = OracleRng::seed_from_u64(11);
        for _ in 0..10_000 {
            let cand = random_member(&ball, &mut rng);
            assert!(-6.0 <= cand.inner(&z).unwrap() + 1e-12);
        }
    }

    #[test]
    fn exact_lmo_rank_one_brute_force() {
        // Over rank-one candidates gamma * a bᵀ with unit a, b on a grid of
        // angles, the minimum of <c, z> approaches -gamma sigma_1.
        let ball = NuclearBall::new(3.0, 2, 2).unwrap();
        let z = Point::matrix(2, 2, vec![2.0, 0.5, -0.3, 1.0]).unwrap();
        let mut best = f64::INFINITY;
        let n = 720;
        for i in 0..n {
            let ta = std::f64::consts::TAU * i as f64 / n as f64;
            for j in 0..n {
                let tb = std::f64::consts::TAU * j as f64 / n as f64;
                let (a, b) = ([ta.cos(), ta.sin()], [tb.cos(), tb.sin()]);
                let c = Point::matrix(
                    2,
                    2,
                    vec![
                        3.0 * a[0] * b[0],
                        3.0 * a[0] * b[1],
                        3.0 * a[1] * b[0],
                        3.0 * a[1] * b[1],
                    ],
                )
                .unwrap();
                best = best.min(c.inner(&z).unwrap());
            }
        }
        let val = ball.lmo_exact(&z).unwrap().inner(&z).unwrap();
        assert!(val <= best + 1e-12);
        assert!(best - val < 1e-3);
    }

    #[test]
    fn zero_direction_and_zero_radius_give_zero() {
        let ball = NuclearBall::new(3.0, 2, 3).unwrap();
        let z0 = Point::zeros(ball.shape());
        assert_eq!(ball.lmo_exact(&z0).unwrap(), z0);
        let tiny = NuclearBall::new(0.0, 2, 3).unwrap();
        let mut rng = OracleRng::seed_from_u64(0);
        let z = random_matrix(2, 3, &mut rng);
        assert_eq!(tiny.lmo_exact(&z).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn power_lmo_gap_small_with_many_iterations() {
        let ball = NuclearBall::new(2.0, 6, 4).unwrap();
        let mut rng = OracleRng::seed_from_u64(5);
        // well separated spectrum: diag(5, 1, 0.5, 0.1) rotated
        let mut z = Mat::<f64>::zeros(6, 4);
        for (i, s) in [5.0, 1.0, 0.5, 0.1].iter().enumerate() {
            z[(i, i)] = *s;
        }
        let q1 = svd(&random_matrix(6, 6, &mut rng)).unwrap().u;
        let q2 = svd(&random_matrix(4, 4, &mut rng)).unwrap().u;
        let z = Point::from_mat((q1 * z * q2.transpose()).as_ref());
        let c = ball.lmo_power(&z, 50, &mut rng).unwrap();
        let gap = measure_lmo_gap(&ball, &c, &z).unwrap();
        assert!(gap >= -1e-12);
        assert!(gap <= 1e-6 * 2.0 * 5.0, "gap {gap}");
        assert!((nuclear_norm(&c).unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn power_lmo_one_iteration_gap_is_nonnegative() {
        let ball = NuclearBall::new(1.0, 2, 2).unwrap();
        let z = diag(3.0, 2.999);
        let mut rng = OracleRng::seed_from_u64(9);
        for _ in 0..50 {
            let c = ball.lmo_power(&z, 1, &mut rng).unwrap();
            assert!(measure_lmo_gap(&ball, &c, &z).unwrap() >= -1e-12);
            assert!((nuclear_norm(&c).unwrap() - 1.0).abs() < 1e-9);
        }
        let z = diag(3.0, 2.9);
        for _ in 0..50 {
            let c = ball.lmo_power(&z, 2, &mut rng).unwrap();
            assert!(measure_lmo_gap(&ball, &c, &z).unwrap() >= 0.0);
        }
    }

    #[test]
    fn water_filling_examples() {
        assert_eq!(water_filling_threshold(&[3.0, 1.0], 2.0), 1.0);
        assert_eq!(water_filling_threshold(&[3.0, 1.0], 5.0), 0.0);
        // both active: 3 - z + 2 - z = 3  =>  z = 1
        assert_eq!(water_filling_threshold(&[2.0, 3.0], 3.0), 1.0);
        assert_eq!(water_filling_threshold(&[3.0, 1.0], 0.0), 3.0);
    }

    #[test]
    fn projection_of_diag_three_one() {
        let ball = NuclearBall::new(2.0, 2, 2).unwrap();
        let p = ball.project_exact(&diag(3.0, 1.0)).unwrap();
        assert!(p.distance(&diag(2.0, 0.0)).unwrap() < 1e-14, "{p:?}");
    }

    #[test]
    fn projection_keeps_members_and_is_idempotent() {
        let ball = NuclearBall::new(2.0, 3, 4).unwrap();
        let mut rng = OracleRng::seed_from_u64(21);
        for _ in 0..50 {
            let z = random_matrix(3, 4, &mut rng).scale(2.0);
            let p = ball.project_exact(&z).unwrap();
            assert!(nuclear_norm(&p).unwrap() <= 2.0 + 1e-8);
            let pp = ball.project_exact(&p).unwrap();
            assert!(
                pp.distance(&p).unwrap() < 1e-10,
                "{}",
                pp.distance(&p).unwrap()
            );
            let inside = random_member(&ball, &mut rng);
            assert_eq!(ball.project_exact(&inside).unwrap(), inside);
        }
    }

    #[test]
    fn projection_beats_sampled_candidates() {
        let ball = NuclearBall::new(2.0, 2, 2).unwrap();
        let mut rng = OracleRng::seed_from_u64(4);
        let z = diag(3.0, 1.0);
        let p = ball.project_exact(&z).unwrap();
        let d = p.distance(&z).unwrap();
        for _ in 0..10_000 {
            let c = random_member(&ball, &mut rng);
            assert!(d <= c.distance(&z).unwrap() + 1e-12);
        }
    }

    #[test]
    fn shape_mismatch_rejected() {
        let ball = NuclearBall::new(1.0, 2, 2).unwrap();
        assert!(ball.lmo_exact(&Point::vector(vec![1.0; 4])).is_err());
        assert!(ball
            .project_exact(&Point::zeros(Shape::Matrix { rows: 2, cols: 3 }))
            .is_err());
    }
}
