//! Problem description shared by the solver, the baselines and the
//! experiment builders.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::oracles::{LinearMinimizer, Projector, SubgradientOracle};
use crate::space::{Point, Shape};

/// Known constants of a problem instance.
///
/// * `lipschitz` bounds the second moment of objective subgradients.
/// * `constraint_bound` bounds `sqrt(sum_i G_i^2)` for constraint subgradients.
/// * `diameter` bounds the diameter of the feasible set.
/// * `num_constraints` is the number of functional constraints.
/// * `delta` is the LMO inexactness budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemConstants {
    pub lipschitz: f64,
    pub constraint_bound: f64,
    pub diameter: f64,
    pub num_constraints: usize,
    pub delta: f64,
}

impl ProblemConstants {
    pub fn unconstrained(lipschitz: f64, diameter: f64) -> Self {
        ProblemConstants {
            lipschitz,
            constraint_bound: 0.0,
            diameter,
            num_constraints: 0,
            delta: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        validate_constants(self)
    }
}

pub fn validate_constants(c: &ProblemConstants) -> Result<()> {
    if !(c.diameter >= 0.0) || !c.diameter.is_finite() {
        return Err(Error::NonPositiveDiameter(c.diameter));
    }
    if !(c.delta >= 0.0) {
        return Err(Error::NegativeBudget(c.delta));
    }
    if !(c.lipschitz >= 0.0) || !c.lipschitz.is_finite() {
        return Err(Error::NegativeConstant {
            name: "L",
            value: c.lipschitz,
        });
    }
    if !(c.constraint_bound >= 0.0) || !c.constraint_bound.is_finite() {
        return Err(Error::NegativeConstant {
            name: "G",
            value: c.constraint_bound,
        });
    }
    if c.num_constraints == 0 && c.constraint_bound != 0.0 {
        return Err(Error::InconsistentG {
            g: c.constraint_bound,
            m: 0,
        });
    }
    Ok(())
}

/// Algorithm parameters: horizon `T` and the step weights `eta`, `alpha`,
/// `beta`, plus the LMO budget `delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverParams {
    pub horizon: usize,
    pub eta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
}

impl SolverParams {
    pub fn new(horizon: usize, eta: f64, alpha: f64, beta: f64, delta: f64) -> Result<Self> {
        let p = SolverParams {
            horizon,
            eta,
            alpha,
            beta,
            delta,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::InvalidParams("T must be at least 1".into()));
        }
        for (name, v) in [
            ("eta", self.eta),
            ("alpha", self.alpha),
            ("beta", self.beta),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParams(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if !(self.delta >= 0.0) {
            return Err(Error::NegativeBudget(self.delta));
        }
        Ok(())
    }
}

/// Optimal value of a problem, tagged by how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Optimum {
    /// Known in closed form.
    Exact(f64),
    /// From a high-effort reference solve.
    Reference(f64),
}

impl Optimum {
    pub fn value(&self) -> f64 {
        match *self {
            Optimum::Exact(v) | Optimum::Reference(v) => v,
        }
    }
}

/// Minimize `f(x)` over `x in X` subject to `h_i(x) <= 0`, solved through the
/// split `x in X`, `y in Y`, `y = x`.
#[derive(Clone)]
pub struct ProblemInstance {
    pub objective: Arc<dyn SubgradientOracle>,
    pub constraints: Vec<Arc<dyn SubgradientOracle>>,
    pub feasible: Arc<dyn LinearMinimizer>,
    pub auxiliary: Arc<dyn Projector>,
    /// Exact projection onto the feasible set, used only by projected baselines.
    pub feasible_projector: Option<Arc<dyn Projector>>,
    pub constants: ProblemConstants,
    pub initial_point: Point,
    pub optimum: Option<Optimum>,
}

impl std::fmt::Debug for ProblemInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemInstance")
            .field("shape", &self.shape())
            .field("constraints", &self.constraints.len())
            .field("constants", &self.constants)
            .field("optimum", &self.optimum)
            .finish()
    }
}

impl ProblemInstance {
    pub fn new(
        objective: Arc<dyn SubgradientOracle>,
        constraints: Vec<Arc<dyn SubgradientOracle>>,
        feasible: Arc<dyn LinearMinimizer>,
        auxiliary: Arc<dyn Projector>,
        constants: ProblemConstants,
        initial_point: Point,
    ) -> Result<Self> {
        let p = ProblemInstance {
            objective,
            constraints,
            feasible,
            auxiliary,
            feasible_projector: None,
            constants,
            initial_point,
            optimum: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_optimum(mut self, optimum: Optimum) -> Self {
        self.optimum = Some(optimum);
        self
    }

    pub fn with_feasible_projector(mut self, proj: Arc<dyn Projector>) -> Result<Self> {
        if proj.shape() != self.shape() {
            return Err(Error::ShapeMismatch {
                expected: self.shape(),
                found: proj.shape(),
            });
        }
        self.feasible_projector = Some(proj);
        Ok(self)
    }

    pub fn shape(&self) -> Shape {
        self.feasible.shape()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn validate(&self) -> Result<()> {
        validate_constants(&self.constants)?;
        if self.constants.num_constraints != self.constraints.len() {
            return Err(Error::ConstraintCountMismatch {
                declared: self.constants.num_constraints,
                supplied: self.constraints.len(),
            });
        }
        let shape = self.feasible.shape();
        if self.auxiliary.shape() != shape {
            return Err(Error::ShapeMismatch {
                expected: shape,
                found: self.auxiliary.shape(),
            });
        }
        self.initial_point.ensure_shape(shape)?;
        if self.feasible.contains(&self.initial_point, 1e-8) == Some(false) {
            return Err(Error::InfeasibleStart);
        }
        Ok(())
    }

    /// `f(x)` and `||[h(x)]_+||_2`.
    pub fn evaluate(&self, x: &Point) -> Result<(f64, f64)> {
        let f = self.objective.value(x)?;
        let mut viol = 0.0;
        for h in &self.constraints {
            let v = h.value(x)?.max(0.0);
            viol += v * v;
        }
        Ok((f, viol.sqrt()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consts(l: f64, g: f64, d: f64, m: usize, delta: f64) -> ProblemConstants {
        ProblemConstants {
            lipschitz: l,
            constraint_bound: g,
            diameter: d,
            num_constraints: m,
            delta,
        }
    }

    #[test]
    fn validate_constants_cases() {
        assert!(validate_constants(&consts(1.0, 1.0, 2.0, 1, 0.0)).is_ok());
        assert_eq!(
            validate_constants(&consts(1.0, 1.0, 2.0, 0, 0.0)),
            Err(Error::InconsistentG { g: 1.0, m: 0 })
        );
        assert_eq!(
            validate_constants(&consts(1.0, 0.0, -1.0, 0, 0.0)),
            Err(Error::NonPositiveDiameter(-1.0))
        );
        assert_eq!(
            validate_constants(&consts(1.0, 0.0, 1.0, 0, -0.5)),
            Err(Error::NegativeBudget(-0.5))
        );
        assert!(validate_constants(&consts(-1.0, 0.0, 1.0, 0, 0.0)).is_err());
        assert!(validate_constants(&consts(1.0, 0.0, f64::NAN, 0, 0.0)).is_err());
    }

    #[test]
    fn params_validation() {
        assert!(SolverParams::new(1, 1.0, 1.0, 1.0, 0.0).is_ok());
        assert!(SolverParams::new(0, 1.0, 1.0, 1.0, 0.0).is_err());
        assert!(SolverParams::new(5, 0.0, 1.0, 1.0, 0.0).is_err());
        assert!(SolverParams::new(5, 1.0, 1.0, -1.0, 0.0).is_err());
        assert!(SolverParams::new(5, 1.0, 1.0, 1.0, -1.0).is_err());
    }
}
