use crate::error::{Error, Result};
use crate::oracles::{LinearMinimizer, LmoQuery, OracleRng, Projector};
use crate::space::{Point, Shape};

/// Axis-aligned box `lower <= x <= upper`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxSet {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxSet {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::BadDims(format!(
                "box bounds of length {} and {}",
                lower.len(),
                upper.len()
            )));
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l <= u)) {
            return Err(Error::BadDims("box lower bound exceeds upper bound".into()));
        }
        Ok(BoxSet { lower, upper })
    }

    pub fn unit(dim: usize) -> Self {
        BoxSet {
            lower: vec![0.0; dim],
            upper: vec![1.0; dim],
        }
    }

    pub fn shape(&self) -> Shape {
        Shape::Vector(self.lower.len())
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn diameter(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| (u - l) * (u - l))
            .sum::<f64>()
            .sqrt()
    }

    /// Lower corner on ties (`v_i = 0`).
    pub fn lmo_exact(&self, v: &Point) -> Result<Point> {
        v.ensure_shape(self.shape())?;
        Ok(Point::vector(
            v.as_slice()
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .map(|(&vi, (&l, &u))| if vi < 0.0 { u } else { l })
                .collect(),
        ))
    }

    fn member(&self, x: &Point, tol: f64) -> bool {
        x.shape() == self.shape()
            && x.as_slice()
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&xi, (&l, &u))| xi >= l - tol && xi <= u + tol)
    }
}

impl LinearMinimizer for BoxSet {
    fn shape(&self) -> Shape {
        Shape::Vector(self.lower.len())
    }

    fn lmo(&self, query: &LmoQuery, _rng: &mut OracleRng) -> Result<Point> {
        self.lmo_exact(&query.direction)
    }

    fn exact_min(&self, v: &Point) -> Result<f64> {
        self.lmo_exact(v)?.inner(v)
    }

    fn contains(&self, x: &Point, tol: f64) -> Option<bool> {
        Some(self.member(x, tol))
    }
}

impl Projector for BoxSet {
    fn shape(&self) -> Shape {
        Shape::Vector(self.lower.len())
    }

    fn project(&self, v: &Point) -> Result<Point> {
        v.ensure_shape(self.shape())?;
        Ok(Point::vector(
            v.as_slice()
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .map(|(&vi, (&l, &u))| vi.clamp(l, u))
                .collect(),
        ))
    }

    fn contains(&self, x: &Point, tol: f64) -> Option<bool> {
        Some(self.member(x, tol))
    }
}

/// Euclidean ball around `center`.
#[derive(Debug, Clone, PartialEq)]
pub struct L2Ball {
    center: Point,
    radius: f64,
}

impl L2Ball {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) {
            return Err(Error::BadDims(format!("ball radius {radius} is negative")));
        }
        Ok(L2Ball { center, radius })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    /// `center - r v / ||v||`, or the center when `v = 0`.
    pub fn lmo_exact(&self, v: &Point) -> Result<Point> {
        v.ensure_shape(self.center.shape())?;
        let n = v.norm();
        let mut x = self.center.clone();
        if n > 0.0 {
            x.axpy(-self.radius / n, v)?;
        }
        Ok(x)
    }
}

impl LinearMinimizer for L2Ball {
    fn shape(&self) -> Shape {
        self.center.shape()
    }

    fn lmo(&self, query: &LmoQuery, _rng: &mut OracleRng) -> Result<Point> {
        self.lmo_exact(&query.direction)
    }

    fn exact_min(&self, v: &Point) -> Result<f64> {
        Ok(self.center.inner(v)? - self.radius * v.norm())
    }

    fn contains(&self, x: &Point, tol: f64) -> Option<bool> {
        Some(
            x.distance(&self.center)
                .is_ok_and(|d| d <= self.radius + tol),
        )
    }
}

impl Projector for L2Ball {
    fn shape(&self) -> Shape {
        self.center.shape()
    }

    fn project(&self, v: &Point) -> Result<Point> {
        let offset = v.sub(&self.center)?;
        let n = offset.norm();
        if n <= self.radius {
            return Ok(v.clone());
        }
        let mut p = self.center.clone();
        p.axpy(self.radius / n, &offset)?;
        Ok(p)
    }

    fn contains(&self, x: &Point, tol: f64) -> Option<bool> {
        LinearMinimizer::contains(self, x, tol)
    }
}

/// The whole space; projection is the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullSpace {
    shape: Shape,
}

impl FullSpace {
    pub fn new(shape: Shape) -> Self {
        FullSpace { shape }
    }
}

impl Projector for FullSpace {
    fn shape(&self) -> Shape {
        self.shape
    }

    fn project(&self, v: &Point) -> Result<Point> {
        v.ensure_shape(self.shape)?;
        Ok(v.clone())
    }

    fn contains(&self, x: &Point, _tol: f64) -> Option<bool> {
        Some(x.shape() == self.shape)
    }
}
