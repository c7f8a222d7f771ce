//! Dense points of the inner-product space the solver iterates in, plus the
//! small vector type used for functional-constraint values and multipliers.

use std::fmt;

use faer::{Mat, MatRef};

use crate::error::{Error, Result};

/// Shape of a [`Point`]: a column vector or a row-major matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Vector(usize),
    Matrix { rows: usize, cols: usize },
}

impl Shape {
    pub fn len(&self) -> usize {
        match *self {
            Shape::Vector(n) => n,
            Shape::Matrix { rows, cols } => rows * cols,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Vector(n) => write!(f, "vector({n})"),
            Shape::Matrix { rows, cols } => write!(f, "matrix({rows}x{cols})"),
        }
    }
}

/// A dense real vector or matrix. Matrices are stored row-major and use the
/// trace inner product `<a, b> = Tr(aᵀ b)`, which is the elementwise sum.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    shape: Shape,
    data: Vec<f64>,
}

impl Point {
    pub fn zeros(shape: Shape) -> Self {
        Point {
            shape,
            data: vec![0.0; shape.len()],
        }
    }

    pub fn vector(data: Vec<f64>) -> Self {
        Point {
            shape: Shape::Vector(data.len()),
            data,
        }
    }

    pub fn scalar(value: f64) -> Self {
        Point::vector(vec![value])
    }

    /// Builds a `rows x cols` matrix from row-major entries.
    pub fn matrix(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadDims(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Point {
            shape: Shape::Matrix { rows, cols },
            data,
        })
    }

    pub fn from_shape_fn(shape: Shape, mut f: impl FnMut(usize) -> f64) -> Self {
        Point {
            shape,
            data: (0..shape.len()).map(&mut f).collect(),
        }
    }

    pub fn from_mat(m: MatRef<'_, f64>) -> Self {
        let (rows, cols) = (m.nrows(), m.ncols());
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(m[(i, j)]);
            }
        }
        Point {
            shape: Shape::Matrix { rows, cols },
            data,
        }
    }

    /// Dense matrix view; vectors become a single column.
    pub fn to_mat(&self) -> Mat<f64> {
        match self.shape {
            Shape::Vector(n) => Mat::from_fn(n, 1, |i, _| self.data[i]),
            Shape::Matrix { rows, cols } => {
                Mat::from_fn(rows, cols, |i, j| self.data[i * cols + j])
            }
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn ensure_shape(&self, expected: Shape) -> Result<()> {
        if self.shape == expected {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                expected,
                found: self.shape,
            })
        }
    }

    pub fn inner(&self, other: &Point) -> Result<f64> {
        other.ensure_shape(self.shape)?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum())
    }

    pub fn norm_squared(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn add(&self, other: &Point) -> Result<Point> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Point) -> Result<Point> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Point {
        Point {
            shape: self.shape,
            data: self.data.iter().map(|a| s * a).collect(),
        }
    }

    pub fn neg(&self) -> Point {
        self.scale(-1.0)
    }

    /// `self += a * x`
    pub fn axpy(&mut self, a: f64, x: &Point) -> Result<()> {
        x.ensure_shape(self.shape)?;
        for (s, v) in self.data.iter_mut().zip(&x.data) {
            *s += a * v;
        }
        Ok(())
    }

    pub fn distance(&self, other: &Point) -> Result<f64> {
        other.ensure_shape(self.shape)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    fn zip_with(&self, other: &Point, f: impl Fn(f64, f64) -> f64) -> Result<Point> {
        other.ensure_shape(self.shape)?;
        Ok(Point {
            shape: self.shape,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }
}

/// Values of the `m` functional constraints, or their multipliers.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConstraintVec(pub Vec<f64>);

impl ConstraintVec {
    pub fn zeros(m: usize) -> Self {
        ConstraintVec(vec![0.0; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Elementwise `max{0, .}`.
    pub fn positive_part(&self) -> ConstraintVec {
        ConstraintVec(self.0.iter().map(|v| v.max(0.0)).collect())
    }

    pub fn neg(&self) -> ConstraintVec {
        ConstraintVec(self.0.iter().map(|v| -v).collect())
    }

    pub fn l2_norm(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

impl From<Vec<f64>> for ConstraintVec {
    fn from(v: Vec<f64>) -> Self {
        ConstraintVec(v)
    }
}
