//! Fixtures shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use pffc::sets::{BoxSet, DagNetwork, Edge, FullSpace, L2Ball};
use pffc::{
    OracleRng, Point, ProblemConstants, ProblemInstance, Projector, Result, Shape,
    SubgradientOracle,
};
use rand::Rng;

/// `f(y) = <c, y> + kink |y_0|`.
pub struct KinkedLinear {
    pub c: Vec<f64>,
    pub kink: f64,
}

impl SubgradientOracle for KinkedLinear {
    fn value(&self, y: &Point) -> Result<f64> {
        let lin: f64 = self.c.iter().zip(y.as_slice()).map(|(c, y)| c * y).sum();
        Ok(lin + self.kink * y.as_slice()[0].abs())
    }

    fn subgradient(&self, y: &Point, _rng: &mut OracleRng) -> Result<Point> {
        let mut g = self.c.clone();
        g[0] += if y.as_slice()[0] >= 0.0 {
            self.kink
        } else {
            -self.kink
        };
        Ok(Point::vector(g))
    }
}

/// `h(y) = <a, y> - b`.
pub struct Halfspace {
    pub a: Vec<f64>,
    pub b: f64,
}

impl SubgradientOracle for Halfspace {
    fn value(&self, y: &Point) -> Result<f64> {
        Ok(self
            .a
            .iter()
            .zip(y.as_slice())
            .map(|(a, y)| a * y)
            .sum::<f64>()
            - self.b)
    }

    fn subgradient(&self, _y: &Point, _rng: &mut OracleRng) -> Result<Point> {
        Ok(Point::vector(self.a.clone()))
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Kinked linear objective over the unit ball with up to three halfspace
/// constraints and a box, ball or unbounded auxiliary set.
pub fn random_problem(rng: &mut OracleRng, dim: usize, constraints: usize) -> ProblemInstance {
    let c: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
    let kink = rng.random_range(0.0..1.0);
    let halfspaces: Vec<Halfspace> = (0..constraints)
        .map(|_| Halfspace {
            a: (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect(),
            b: rng.random_range(-0.3..0.5),
        })
        .collect();
    let g = halfspaces.iter().map(|h| norm(&h.a)).fold(0.0, f64::max);
    let shape = Shape::Vector(dim);
    let auxiliary: Arc<dyn Projector> = match rng.random_range(0..3) {
        0 => Arc::new(BoxSet::new(vec![-1.2; dim], vec![1.2; dim]).unwrap()),
        1 => Arc::new(L2Ball::new(Point::zeros(shape), 1.5).unwrap()),
        _ => Arc::new(FullSpace::new(shape)),
    };
    ProblemInstance::new(
        Arc::new(KinkedLinear { c: c.clone(), kink }),
        halfspaces
            .into_iter()
            .map(|h| Arc::new(h) as Arc<dyn SubgradientOracle>)
            .collect(),
        Arc::new(L2Ball::new(Point::zeros(shape), 1.0).unwrap()),
        auxiliary,
        ProblemConstants {
            lipschitz: norm(&c) + kink,
            constraint_bound: if constraints > 0 { g } else { 0.0 },
            diameter: 2.0,
            num_constraints: constraints,
            delta: 0.0,
        },
        Point::zeros(shape),
    )
    .unwrap()
}

/// Random DAG on nodes `0..n` (edges go from lower to higher index) with
/// at most `max_edges` edges, source 0 and sink `n - 1`. Returns `None` when
/// the sink is unreachable.
pub fn random_dag(rng: &mut OracleRng, max_edges: usize, demand: f64) -> Option<DagNetwork> {
    let n = rng.random_range(3..=7);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    for i in (1..pairs.len()).rev() {
        let j = rng.random_range(0..=i);
        pairs.swap(i, j);
    }
    let m = rng.random_range(2..=max_edges.min(pairs.len()));
    let edges: Vec<Edge> = pairs[..m]
        .iter()
        .map(|&(tail, head)| Edge {
            tail,
            head,
            capacity: rng.random_range(1..=8) as f64 * 0.5,
        })
        .collect();
    let net = DagNetwork::new(n, edges, 0, n - 1, demand).ok()?;
    if net.enumerate_paths().is_empty() {
        None
    } else {
        Some(net)
    }
}

/// Weights on a 1/64 grid in `[-1, 1]`, so path sums are exact.
pub fn dyadic_weights(rng: &mut OracleRng, len: usize) -> Point {
    Point::vector(
        (0..len)
            .map(|_| rng.random_range(-64..=64) as f64 / 64.0)
            .collect(),
    )
}
