mod common;

use pffc::sets::{
    capacitated_flow_lmo, dag_shortest_path_lmo, nuclear_norm, singular_values,
    water_filling_threshold, BoxSet, L2Ball, NuclearBall,
};
use pffc::solver::{
    configure_parsel2, init_state, run, step, theorem1_bound, theorem3_qbound, MultiplierNorms,
    QBoundMode, RunOptions,
};
use pffc::{OracleRng, Point, ProblemConstants, Projector, Shape, SolverParams};
use proptest::prelude::*;
use rand::SeedableRng;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(-3.0..3.0f64, rows * cols)
        .prop_map(move |data| Point::matrix(rows, cols, data).unwrap())
}

fn sized_matrix() -> impl Strategy<Value = Point> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multipliers_stay_nonnegative(
        seed in any::<u64>(),
        dim in 1usize..6,
        m in 1usize..4,
        eta in 0.05..5.0f64,
        alpha in 0.05..5.0f64,
        beta in 0.05..5.0f64,
    ) {
        let mut rng = OracleRng::seed_from_u64(seed);
        let problem = common::random_problem(&mut rng, dim, m);
        let params = SolverParams::new(60, eta, alpha, beta, 0.0).unwrap();
        let mut state = init_state(&problem, &mut rng).unwrap();
        while state.t < params.horizon {
            step(&problem, &params, &mut state, &mut rng, false).unwrap();
            let (w, wh) = state.multiplier_margins();
            prop_assert!(w >= -1e-12 && wh >= -1e-12, "W {w}, W + h {wh}");
        }
    }

    #[test]
    fn drift_equals_scaled_average_gap(seed in any::<u64>(), dim in 1usize..8, m in 0usize..3, t in 1usize..200) {
        let mut rng = OracleRng::seed_from_u64(seed);
        let problem = common::random_problem(&mut rng, dim, m);
        let params = configure_parsel2(t, &problem.constants).unwrap();
        let report = run(&problem, &params, seed, &RunOptions::default()).unwrap();
        prop_assert!(report.drift_identity_error() <= 1e-9);
        prop_assert_eq!(report.q_norms.len(), t);
    }

    #[test]
    fn drift_norm_within_bound_without_constraints(seed in any::<u64>(), dim in 1usize..6, t in 4usize..300) {
        let mut rng = OracleRng::seed_from_u64(seed);
        let problem = common::random_problem(&mut rng, dim, 0);
        let params = configure_parsel2(t, &problem.constants).unwrap();
        let report = run(&problem, &params, seed, &RunOptions::default()).unwrap();
        for (i, &q) in report.q_norms.iter().enumerate() {
            let bound = theorem3_qbound(&params, &problem.constants, i + 1, t,
                MultiplierNorms::default(), QBoundMode::ParSel2).unwrap();
            prop_assert!(q <= bound, "t = {}: {q} > {bound}", i + 1);
        }
    }

    #[test]
    fn iterates_stay_in_their_sets(seed in any::<u64>(), dim in 1usize..6, m in 0usize..3) {
        let mut rng = OracleRng::seed_from_u64(seed);
        let problem = common::random_problem(&mut rng, dim, m);
        let params = configure_parsel2(50, &problem.constants).unwrap();
        let mut state = init_state(&problem, &mut rng).unwrap();
        while state.t < params.horizon {
            step(&problem, &params, &mut state, &mut rng, false).unwrap();
            prop_assert!(state.x.norm() <= 1.0 + 1e-12);
            prop_assert!(state.average_x().norm() <= 1.0 + 1e-12);
            let y = state.y.clone();
            prop_assert!(problem.auxiliary.project(&y).unwrap().distance(&y).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn tuned_gap_bound_closed_form(
        l in 0.1..10.0f64, g in 0.1..10.0f64, d in 0.1..10.0f64, delta in 0.0..2.0f64, t in 1usize..10_000,
    ) {
        let c = ProblemConstants { lipschitz: l, constraint_bound: g, diameter: d, num_constraints: 2, delta };
        let params = configure_parsel2(t, &c).unwrap();
        let closed = (l * (d * d + 2.0 * delta).sqrt() + l * d + g * d) / (t as f64).sqrt();
        let b = theorem1_bound(&params, &c, t);
        prop_assert!((b - closed).abs() <= 1e-10 * closed, "{b} vs {closed}");
    }

    #[test]
    fn nuclear_projection_is_feasible_and_idempotent(z in sized_matrix(), gamma in 0.1..5.0f64) {
        let Shape::Matrix { rows, cols } = z.shape() else { unreachable!() };
        let ball = NuclearBall::new(gamma, rows, cols).unwrap();
        let p = ball.project(&z).unwrap();
        prop_assert!(nuclear_norm(&p).unwrap() <= gamma * (1.0 + 1e-10));
        prop_assert!(ball.project(&p).unwrap().distance(&p).unwrap() <= 1e-9 * (1.0 + p.norm()));
        if nuclear_norm(&z).unwrap() <= gamma {
            prop_assert!(p.distance(&z).unwrap() <= 1e-9 * (1.0 + z.norm()));
        }
    }

    #[test]
    fn nuclear_lmo_attains_dual_norm(z in sized_matrix(), gamma in 0.1..5.0f64) {
        let Shape::Matrix { rows, cols } = z.shape() else { unreachable!() };
        let ball = NuclearBall::new(gamma, rows, cols).unwrap();
        let s = ball.lmo_exact(&z).unwrap();
        let sigma1 = singular_values(&z).unwrap()[0];
        prop_assert!((s.inner(&z).unwrap() + gamma * sigma1).abs() <= 1e-9 * (1.0 + gamma * sigma1));
        prop_assert!((nuclear_norm(&s).unwrap() - gamma).abs() <= 1e-9 * gamma || sigma1 == 0.0);
    }

    #[test]
    fn water_filling_hits_the_radius(sigmas in prop::collection::vec(0.0..4.0f64, 1..8), gamma in 0.01..3.0f64) {
        let zeta = water_filling_threshold(&sigmas, gamma);
        let kept: f64 = sigmas.iter().map(|s| (s - zeta).max(0.0)).sum();
        if sigmas.iter().sum::<f64>() > gamma {
            prop_assert!((kept - gamma).abs() <= 1e-10 * (1.0 + gamma));
        } else {
            prop_assert_eq!(zeta, 0.0);
        }
    }

    #[test]
    fn simple_projections_are_nonexpansive(
        a in prop::collection::vec(-5.0..5.0f64, 4),
        b in prop::collection::vec(-5.0..5.0f64, 4),
        r in 0.1..3.0f64,
    ) {
        let (a, b) = (Point::vector(a), Point::vector(b));
        let sets: [Box<dyn Projector>; 2] = [
            Box::new(BoxSet::new(vec![-1.0; 4], vec![2.0; 4]).unwrap()),
            Box::new(L2Ball::new(Point::zeros(Shape::Vector(4)), r).unwrap()),
        ];
        for set in sets {
            let (pa, pb) = (set.project(&a).unwrap(), set.project(&b).unwrap());
            prop_assert!(pa.distance(&pb).unwrap() <= a.distance(&b).unwrap() + 1e-12);
        }
    }

    #[test]
    fn flow_lmos_return_feasible_minimizers(seed in any::<u64>()) {
        let mut rng = OracleRng::seed_from_u64(seed);
        let Some(net) = common::random_dag(&mut rng, 12, 1.5) else { return Ok(()) };
        let w = common::dyadic_weights(&mut rng, net.num_edges());
        let x = dag_shortest_path_lmo(&net, &w).unwrap();
        prop_assert!(net.in_path_polytope(&x, 1e-12));
        for path in net.enumerate_paths() {
            prop_assert!(x.inner(&w).unwrap() <= net.path_flow(&path).inner(&w).unwrap());
        }
        let capped = net.with_demand(0.5 * net.max_flow()).unwrap();
        let xc = capacitated_flow_lmo(&capped, &w).unwrap();
        prop_assert!(capped.in_capacitated_polytope(&xc, 1e-8));
    }
}
