//! Minimum-cost flow with a convex piecewise-linear cost per edge,
//! `f(x) = sum_e max{a_e x_e + b_e, c_e}`, in four equivalent formulations
//! that differ in where the capacity constraint lives:
//!
//! | formulation | `X`                  | `Y`              | constraint           |
//! |-------------|----------------------|------------------|----------------------|
//! | F1          | capacitated polytope | whole space      | none                 |
//! | F2          | capacitated polytope | box `[0, max{d, k}]` | none             |
//! | F3          | flow polytope        | whole space      | `max_e x_e - k_e <= 0` |
//! | F4          | flow polytope        | box `[0, max{d, k}]` | `max_e x_e - k_e <= 0` |

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::oracles::{LinearMinimizer, LmoQuery, OracleRng, Projector, SubgradientOracle};
use crate::problem::{Optimum, ProblemConstants, ProblemInstance};
use crate::reference::max_affine_flow_lp;
use crate::sets::{BoxSet, CapacitatedPolytope, DagNetwork, FullSpace, PathPolytope};
use crate::space::Point;

/// The shipped six-node instance.
pub const DEFAULT_GRAPH: &str = include_str!("../../fixtures/minflow_default.graph");

pub fn default_network() -> DagNetwork {
    DagNetwork::parse(DEFAULT_GRAPH).expect("shipped graph parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formulation {
    F1,
    F2,
    F3,
    F4,
}

impl Formulation {
    pub const ALL: [Formulation; 4] = [
        Formulation::F1,
        Formulation::F2,
        Formulation::F3,
        Formulation::F4,
    ];

    /// Capacities enforced through the functional constraint.
    pub fn has_capacity_constraint(self) -> bool {
        matches!(self, Formulation::F3 | Formulation::F4)
    }

    pub fn has_box(self) -> bool {
        matches!(self, Formulation::F2 | Formulation::F4)
    }
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Formulation::F1 => "F1",
            Formulation::F2 => "F2",
            Formulation::F3 => "F3",
            Formulation::F4 => "F4",
        };
        f.write_str(s)
    }
}

impl FromStr for Formulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "F1" => Ok(Formulation::F1),
            "F2" => Ok(Formulation::F2),
            "F3" => Ok(Formulation::F3),
            "F4" => Ok(Formulation::F4),
            _ => Err(Error::InvalidParams(format!("unknown formulation {s:?}"))),
        }
    }
}

/// How the per-edge cost coefficients are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientRule {
    /// `a = exp(k/10)`, `b = k/10`, `c = k/5` from the capacities.
    Default,
    Explicit {
        a: Vec<f64>,
        b: Vec<f64>,
        c: Vec<f64>,
    },
}

#[derive(Debug, Clone)]
pub struct MinFlowInstance {
    pub net: Arc<DagNetwork>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub formulation: Formulation,
}

impl MinFlowInstance {
    pub fn new(
        net: Arc<DagNetwork>,
        rule: CoefficientRule,
        formulation: Formulation,
    ) -> Result<Self> {
        let (a, b, c) = match rule {
            CoefficientRule::Default => {
                let k = net.capacities();
                (
                    k.iter().map(|k| (k / 10.0).exp()).collect(),
                    k.iter().map(|k| k / 10.0).collect(),
                    k.iter().map(|k| k / 5.0).collect(),
                )
            }
            CoefficientRule::Explicit { a, b, c } => (a, b, c),
        };
        let m = net.num_edges();
        if a.len() != m || b.len() != m || c.len() != m {
            return Err(Error::BadDims(format!(
                "coefficient lengths ({}, {}, {}) do not match {m} edges",
                a.len(),
                b.len(),
                c.len()
            )));
        }
        if a.iter()
            .chain(&b)
            .chain(&c)
            .any(|v| !(*v >= 0.0) || !v.is_finite())
        {
            return Err(Error::InvalidParams(
                "cost coefficients must be finite and nonnegative".into(),
            ));
        }
        Ok(MinFlowInstance {
            net,
            a,
            b,
            c,
            formulation,
        })
    }

    pub fn value(&self, x: &Point) -> Result<f64> {
        x.ensure_shape(self.net.shape())?;
        Ok(x.as_slice()
            .iter()
            .enumerate()
            .map(|(e, &xe)| (self.a[e] * xe + self.b[e]).max(self.c[e]))
            .sum())
    }

    /// Slope `a_e` on edges whose affine piece is active (ties included), 0 elsewhere.
    pub fn subgradient(&self, x: &Point) -> Result<Point> {
        x.ensure_shape(self.net.shape())?;
        Ok(Point::vector(
            x.as_slice()
                .iter()
                .enumerate()
                .map(|(e, &xe)| {
                    if self.a[e] * xe + self.b[e] >= self.c[e] {
                        self.a[e]
                    } else {
                        0.0
                    }
                })
                .collect(),
        ))
    }

    fn require_capacity_constraint(&self) -> Result<()> {
        if self.formulation.has_capacity_constraint() {
            Ok(())
        } else {
            Err(Error::WrongFormulation)
        }
    }

    /// `max_e x_e - k_e`
    pub fn hcap_value(&self, x: &Point) -> Result<f64> {
        self.require_capacity_constraint()?;
        capacity_excess(&self.net, x).map(|(v, _)| v)
    }

    /// Basis vector of the most violated edge, lowest index on ties.
    pub fn hcap_subgradient(&self, x: &Point) -> Result<Point> {
        self.require_capacity_constraint()?;
        let (_, e) = capacity_excess(&self.net, x)?;
        let mut g = Point::zeros(self.net.shape());
        g.as_mut_slice()[e] = 1.0;
        Ok(g)
    }

    pub fn lipschitz(&self) -> f64 {
        self.a.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// Optimal value from the epigraph LP.
    pub fn reference_optimum(&self) -> Result<f64> {
        max_affine_flow_lp(&self.net, &self.a, &self.b, &self.c).map(|(v, _)| v)
    }
}

fn capacity_excess(net: &DagNetwork, x: &Point) -> Result<(f64, usize)> {
    x.ensure_shape(net.shape())?;
    let mut best = (f64::NEG_INFINITY, 0);
    for (e, (&xe, edge)) in x.as_slice().iter().zip(net.edges()).enumerate() {
        let v = xe - edge.capacity;
        if v > best.0 {
            best = (v, e);
        }
    }
    Ok(best)
}

struct MinFlowObjective(Arc<MinFlowInstance>);

impl SubgradientOracle for MinFlowObjective {
    fn value(&self, y: &Point) -> Result<f64> {
        self.0.value(y)
    }

    fn subgradient(&self, y: &Point, _rng: &mut OracleRng) -> Result<Point> {
        self.0.subgradient(y)
    }

    fn norm_bound(&self) -> Option<f64> {
        Some(self.0.lipschitz())
    }
}

struct CapacityConstraint(Arc<MinFlowInstance>);

impl SubgradientOracle for CapacityConstraint {
    fn value(&self, y: &Point) -> Result<f64> {
        self.0.hcap_value(y)
    }

    fn subgradient(&self, y: &Point, _rng: &mut OracleRng) -> Result<Point> {
        self.0.hcap_subgradient(y)
    }

    fn norm_bound(&self) -> Option<f64> {
        Some(1.0)
    }
}

/// Builds the instance and wires the sets, constraint and constants of the
/// chosen formulation. The start point is the LMO answer for a zero direction,
/// and the reported optimum comes from the epigraph LP.
pub fn build_minflow(
    net: DagNetwork,
    rule: CoefficientRule,
    formulation: Formulation,
) -> Result<(Arc<MinFlowInstance>, ProblemInstance)> {
    let net = Arc::new(net);
    let inst = Arc::new(MinFlowInstance::new(net.clone(), rule, formulation)?);
    let shape = net.shape();
    let feasible: Arc<dyn LinearMinimizer> = if formulation.has_capacity_constraint() {
        Arc::new(PathPolytope::new(net.clone()))
    } else {
        Arc::new(CapacitatedPolytope::new(net.clone())?)
    };
    let auxiliary: Arc<dyn Projector> = if formulation.has_box() {
        Arc::new(BoxSet::new(vec![0.0; net.num_edges()], net.box_upper())?)
    } else {
        Arc::new(FullSpace::new(shape))
    };
    let constraints: Vec<Arc<dyn SubgradientOracle>> = if formulation.has_capacity_constraint() {
        vec![Arc::new(CapacityConstraint(inst.clone()))]
    } else {
        Vec::new()
    };
    let m = constraints.len();
    let constants = ProblemConstants {
        lipschitz: inst.lipschitz(),
        constraint_bound: if m > 0 { 1.0 } else { 0.0 },
        diameter: net.diameter_bound(),
        num_constraints: m,
        delta: 0.0,
    };
    let mut rng = <OracleRng as rand::SeedableRng>::seed_from_u64(0);
    let start = feasible.lmo(&LmoQuery::exact(Point::zeros(shape)), &mut rng)?;
    let optimum = inst.reference_optimum()?;
    let problem = ProblemInstance::new(
        Arc::new(MinFlowObjective(inst.clone())),
        constraints,
        feasible,
        auxiliary,
        constants,
        start,
    )?
    .with_optimum(Optimum::Reference(optimum));
    Ok((inst, problem))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn default_instance(f: Formulation) -> (Arc<MinFlowInstance>, ProblemInstance) {
        build_minflow(default_network(), CoefficientRule::Default, f).unwrap()
    }

    #[test]
    fn shipped_graph_shape() {
        let net = default_network();
        assert_eq!((net.num_nodes(), net.num_edges()), (6, 9));
        assert_eq!(net.demand(), 4.1);
        assert!(net.capacities().iter().all(|&k| (1.0..=6.0).contains(&k)));
        assert!(net.max_flow() >= 4.1);
        assert_eq!(net.to_text(), DEFAULT_GRAPH);
    }

    #[test]
    fn all_formulations_build() {
        for f in Formulation::ALL {
            let (inst, p) = default_instance(f);
            assert_eq!(
                p.num_constraints(),
                usize::from(f.has_capacity_constraint())
            );
            assert_eq!(
                p.constants.constraint_bound,
                if f.has_capacity_constraint() {
                    1.0
                } else {
                    0.0
                }
            );
            assert!((p.constants.lipschitz - inst.lipschitz()).abs() < 1e-15);
            assert!(matches!(p.optimum, Some(Optimum::Reference(_))));
        }
    }

    #[test]
    fn value_at_zero_and_affine_subgradient() {
        let (inst, _) = default_instance(Formulation::F1);
        let zero = Point::zeros(inst.net.shape());
        let expect: f64 = inst.b.iter().zip(&inst.c).map(|(b, c)| b.max(*c)).sum();
        assert_eq!(inst.value(&zero).unwrap(), expect);
        let big = Point::vector(vec![100.0; 9]);
        assert_eq!(
            inst.subgradient(&big).unwrap().as_slice(),
            inst.a.as_slice()
        );
    }

    #[test]
    fn tie_takes_affine_slope() {
        let net = Arc::new(default_network());
        let rule = CoefficientRule::Explicit {
            a: vec![2.0; 9],
            b: vec![0.0; 9],
            c: vec![1.0; 9],
        };
        let inst = MinFlowInstance::new(net, rule, Formulation::F1).unwrap();
        let s = inst.subgradient(&Point::vector(vec![0.5; 9])).unwrap();
        assert!(s.as_slice().iter().all(|&v| v == 2.0));
    }

    #[test]
    fn objective_convexity_certificate() {
        let (inst, _) = default_instance(Formulation::F1);
        let mut rng = OracleRng::seed_from_u64(3);
        for _ in 0..100 {
            let x = Point::vector((0..9).map(|_| rng.random_range(-1.0..5.0)).collect());
            let z = Point::vector((0..9).map(|_| rng.random_range(-1.0..5.0)).collect());
            let s = inst.subgradient(&x).unwrap();
            let lin = inst.value(&x).unwrap() + s.inner(&z.sub(&x).unwrap()).unwrap();
            assert!(inst.value(&z).unwrap() >= lin - 1e-9);
        }
    }

    #[test]
    fn hcap_examples() {
        let (inst, _) = default_instance(Formulation::F3);
        let k = Point::vector(inst.net.capacities());
        assert_eq!(inst.hcap_value(&k).unwrap(), 0.0);
        assert_eq!(inst.hcap_subgradient(&k).unwrap().as_slice()[0], 1.0);
        let mut x = k.clone();
        x.as_mut_slice()[2] += 0.5;
        assert_eq!(inst.hcap_value(&x).unwrap(), 0.5);
        let g = inst.hcap_subgradient(&x).unwrap();
        assert_eq!(g.as_slice()[2], 1.0);
        assert_eq!(g.norm(), 1.0);

        let mut rng = OracleRng::seed_from_u64(4);
        for _ in 0..100 {
            let x = Point::vector((0..9).map(|_| rng.random_range(0.0..6.0)).collect());
            let z = Point::vector((0..9).map(|_| rng.random_range(0.0..6.0)).collect());
            let g = inst.hcap_subgradient(&x).unwrap();
            let lin = inst.hcap_value(&x).unwrap() + g.inner(&z.sub(&x).unwrap()).unwrap();
            assert!(inst.hcap_value(&z).unwrap() >= lin - 1e-9);
        }
    }

    #[test]
    fn hcap_needs_constraint_formulation() {
        for f in [Formulation::F1, Formulation::F2] {
            let (inst, _) = default_instance(f);
            let x = Point::zeros(inst.net.shape());
            assert_eq!(inst.hcap_value(&x), Err(Error::WrongFormulation));
            assert_eq!(inst.hcap_subgradient(&x), Err(Error::WrongFormulation));
        }
    }

    #[test]
    fn start_points_are_feasible_for_x() {
        for f in Formulation::ALL {
            let (inst, p) = default_instance(f);
            assert!(inst.net.in_path_polytope(&p.initial_point, 1e-8));
            if !f.has_capacity_constraint() {
                assert!(inst.net.in_capacitated_polytope(&p.initial_point, 1e-8));
            }
        }
    }

    #[test]
    fn formulation_parsing() {
        assert_eq!("f3".parse::<Formulation>().unwrap(), Formulation::F3);
        assert!("F5".parse::<Formulation>().is_err());
        assert_eq!(Formulation::F2.to_string(), "F2");
    }
}
