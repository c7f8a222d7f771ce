//! Linear-programming references for the flow problems, solved with a
//! general-purpose simplex on the node-arc incidence formulation.

use minilp::{ComparisonOp, OptimizationDirection, Problem, Variable};

use crate::error::{Error, Result};
use crate::sets::DagNetwork;
use crate::space::Point;

fn lp_error(e: minilp::Error) -> Error {
    Error::OracleFailure(format!("LP reference: {e}"))
}

fn add_conservation(lp: &mut Problem, net: &DagNetwork, flows: &[Variable]) {
    for node in 0..net.num_nodes() {
        let mut row = Vec::new();
        for (e, edge) in net.edges().iter().enumerate() {
            if edge.tail == node {
                row.push((flows[e], 1.0));
            } else if edge.head == node {
                row.push((flows[e], -1.0));
            }
        }
        if !row.is_empty() {
            lp.add_constraint(row.as_slice(), ComparisonOp::Eq, net.supply(node));
        }
    }
}

/// `min <w, x>` over conservation with `0 <= x <= k`. Returns the value and
/// a minimizer.
pub fn capacitated_lp(net: &DagNetwork, weights: &Point) -> Result<(f64, Point)> {
    weights.ensure_shape(net.shape())?;
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let flows: Vec<Variable> = net
        .edges()
        .iter()
        .zip(weights.as_slice())
        .map(|(edge, &w)| lp.add_var(w, (0.0, edge.capacity)))
        .collect();
    add_conservation(&mut lp, net, &flows);
    let sol = lp.solve().map_err(lp_error)?;
    let x = Point::vector(flows.iter().map(|&v| sol[v]).collect());
    Ok((sol.objective(), x))
}

/// `min sum_e max{a_e x_e + b_e, c_e}` over the capacitated flow polytope,
/// via the epigraph variables `t_e >= a_e x_e + b_e`, `t_e >= c_e`.
pub fn max_affine_flow_lp(
    net: &DagNetwork,
    a: &[f64],
    b: &[f64],
    c: &[f64],
) -> Result<(f64, Point)> {
    let m = net.num_edges();
    if a.len() != m || b.len() != m || c.len() != m {
        return Err(Error::BadDims(format!(
            "expected {m} coefficients per edge"
        )));
    }
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let flows: Vec<Variable> = net
        .edges()
        .iter()
        .map(|edge| lp.add_var(0.0, (0.0, edge.capacity)))
        .collect();
    let epi: Vec<Variable> = c
        .iter()
        .map(|&ce| lp.add_var(1.0, (ce, f64::INFINITY)))
        .collect();
    for e in 0..m {
        lp.add_constraint([(epi[e], 1.0), (flows[e], -a[e])], ComparisonOp::Ge, b[e]);
    }
    add_conservation(&mut lp, net, &flows);
    let sol = lp.solve().map_err(lp_error)?;
    let x = Point::vector(flows.iter().map(|&v| sol[v]).collect());
    Ok((sol.objective(), x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::Edge;

    fn triangle(caps: [f64; 3], demand: f64) -> DagNetwork {
        let edges = vec![
            Edge {
                tail: 0,
                head: 1,
                capacity: caps[0],
            },
            Edge {
                tail: 1,
                head: 2,
                capacity: caps[1],
            },
            Edge {
                tail: 0,
                head: 2,
                capacity: caps[2],
            },
        ];
        DagNetwork::new(3, edges, 0, 2, demand).unwrap()
    }

    #[test]
    fn capacitated_triangle() {
        let net = triangle([1.0, 1.0, 5.0], 2.0);
        let (v, x) = capacitated_lp(&net, &Point::vector(vec![1.0, 1.0, 3.0])).unwrap();
        assert!((v - 5.0).abs() < 1e-9);
        assert!(x.distance(&Point::vector(vec![1.0, 1.0, 1.0])).unwrap() < 1e-9);
    }

    #[test]
    fn infeasible_demand_is_an_error() {
        let net = triangle([1.0, 1.0, 0.5], 2.0);
        assert!(capacitated_lp(&net, &Point::vector(vec![1.0; 3])).is_err());
    }

    #[test]
    fn max_affine_single_path() {
        // a single two-edge path carrying d = 1.5: t_e = max(2 x + 0.1, 1) = 3.1 each
        let edges = vec![
            Edge {
                tail: 0,
                head: 1,
                capacity: 2.0,
            },
            Edge {
                tail: 1,
                head: 2,
                capacity: 2.0,
            },
        ];
        let net = DagNetwork::new(3, edges, 0, 2, 1.5).unwrap();
        let (v, _) = max_affine_flow_lp(&net, &[2.0, 2.0], &[0.1, 0.1], &[1.0, 1.0]).unwrap();
        assert!((v - 6.2).abs() < 1e-9);
    }
}
