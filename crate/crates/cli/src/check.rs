//! Property suites behind `pffc check`. Each check prints one line with its
//! measured margin; a suite passes when all of its checks do.

use std::sync::Arc;

use pffc::oracles::GapSummary;
use pffc::problems::{
    build_minflow, build_oned, build_r4nr, default_network, gen_r4nr, CoefficientRule, Formulation,
    OneDimObjective, OneDimSpec, R4nrConfig, SubgradientMode,
};
use pffc::reference::capacitated_lp;
use pffc::sets::{
    capacitated_flow_lmo, dag_shortest_path_lmo, nuclear_norm, singular_values, NuclearBall,
    NuclearLmoMode,
};
use pffc::solver::{
    configure_parsel2, init_state, lemma4_argmin_oracle, run, step, theorem1_bound, theorem2_bound,
    theorem3_qbound, MultiplierNorms, QBoundMode, RecordSchedule, RunOptions, RunReport,
};
use pffc::{OracleRng, Point, ProblemInstance, Projector, Result};
use rand::{Rng, SeedableRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Invariants,
    Bounds,
    Oracles,
}

pub struct CheckOptions {
    pub seed: u64,
    pub power_iters: usize,
}

#[derive(Default)]
struct Tally {
    failed: usize,
    total: usize,
}

impl Tally {
    fn record(&mut self, pass: bool, name: &str, detail: String) {
        self.total += 1;
        if !pass {
            self.failed += 1;
        }
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    }
}

/// Runs the suite and returns whether every check passed.
pub fn run_suite(suite: Suite, opts: &CheckOptions) -> Result<bool> {
    let mut tally = Tally::default();
    match suite {
        Suite::Invariants => invariants(&mut tally, opts)?,
        Suite::Bounds => bounds(&mut tally, opts)?,
        Suite::Oracles => oracles(&mut tally, opts)?,
    }
    println!(
        "{} of {} checks passed",
        tally.total - tally.failed,
        tally.total
    );
    Ok(tally.failed == 0)
}

fn final_only() -> RunOptions {
    RunOptions {
        record: RecordSchedule::Stride(usize::MAX),
        measure_gap: false,
    }
}

fn minflow(f: Formulation) -> Result<ProblemInstance> {
    Ok(build_minflow(default_network(), CoefficientRule::Default, f)?.1)
}

fn tuned(problem: &ProblemInstance, horizon: usize, seed: u64) -> Result<RunReport> {
    run(
        problem,
        &configure_parsel2(horizon, &problem.constants)?,
        seed,
        &final_only(),
    )
}

fn final_obj(report: &RunReport) -> f64 {
    report.final_row().map_or(f64::NAN, |r| r.obj_avg)
}

fn final_violation(report: &RunReport) -> f64 {
    report
        .final_row()
        .and_then(|r| r.violation_l2)
        .unwrap_or(0.0)
}

fn invariants(tally: &mut Tally, opts: &CheckOptions) -> Result<()> {
    let mut problems = vec![
        ("F3", minflow(Formulation::F3)?),
        ("F4", minflow(Formulation::F4)?),
        ("1-D", build_oned(OneDimSpec::unit_linear())?),
    ];
    let inst = Arc::new(gen_r4nr(&R4nrConfig::desk(), opts.seed)?);
    problems.push((
        "R4NR",
        build_r4nr(
            inst,
            NuclearLmoMode::Exact,
            SubgradientMode::Stochastic { batch: 10 },
        )?,
    ));

    for (name, problem) in &problems {
        let horizon = if *name == "R4NR" { 300 } else { 1000 };
        let mut min_w = f64::INFINITY;
        let mut min_wh = f64::INFINITY;
        let mut drift = 0.0f64;
        for k in 0..5 {
            let report = tuned(problem, horizon, opts.seed.wrapping_add(k))?;
            min_w = min_w.min(report.min_w);
            min_wh = min_wh.min(report.min_w_plus_h);
            drift = drift.max(report.drift_identity_error());
        }
        if problem.num_constraints() > 0 {
            tally.record(
                min_w >= -1e-12 && min_wh >= -1e-12,
                &format!("multipliers {name}"),
                format!(
                    "min W = {min_w:.3e}, min W + h = {min_wh:.3e} over 5 runs of T = {horizon}"
                ),
            );
        }
        tally.record(
            drift <= 1e-9,
            &format!("drift identity {name}"),
            format!("max relative error {drift:.3e} (limit 1e-9)"),
        );
    }

    let mut rng = OracleRng::seed_from_u64(opts.seed);
    for (name, problem) in problems.iter().take(3) {
        let params = configure_parsel2(10_000, &problem.constants)?;
        let mut state = init_state(problem, &mut rng)?;
        let mut worst = 0.0f64;
        for _ in 0..20 {
            for _ in 0..rng.random_range(0..10) {
                step(problem, &params, &mut state, &mut rng, false)?;
            }
            let before = state.clone();
            let trace = step(problem, &params, &mut state, &mut rng, false)?;
            let reference = lemma4_argmin_oracle(problem, &params, &before, &trace.x_next)?;
            worst = worst.max(state.y.distance(&reference)?);
        }
        tally.record(
            worst <= 1e-7,
            &format!("auxiliary step {name}"),
            format!("max distance to numeric minimizer {worst:.3e} over 20 states (limit 1e-7)"),
        );
    }
    Ok(())
}

fn bounds(tally: &mut Tally, opts: &CheckOptions) -> Result<()> {
    let exp = OneDimSpec {
        lo: -1.0,
        hi: 1.0,
        start: 1.0,
        objective: OneDimObjective::ExpMax,
    };
    let problems = [
        ("1-D linear", build_oned(OneDimSpec::unit_linear())?),
        ("1-D expmax", build_oned(exp)?),
        ("F1", minflow(Formulation::F1)?),
    ];
    for (name, problem) in &problems {
        let fstar = problem.optimum.map_or(f64::NAN, |o| o.value());
        for t in [100, 400, 1600] {
            let params = configure_parsel2(t, &problem.constants)?;
            let report = run(problem, &params, opts.seed, &final_only())?;
            let gap = final_obj(&report) - fstar;
            let bound = theorem1_bound(&params, &problem.constants, t);
            tally.record(
                gap <= bound,
                &format!("objective gap {name} T={t}"),
                format!("{gap:.5} <= {bound:.5} (margin {:.5})", bound - gap),
            );
            if t == 1600 {
                let mut worst = 0.0f64;
                for (i, &q) in report.q_norms.iter().enumerate() {
                    let b = theorem3_qbound(
                        &params,
                        &problem.constants,
                        i + 1,
                        t,
                        MultiplierNorms::default(),
                        QBoundMode::ParSel2,
                    )?;
                    worst = worst.max(q / b);
                }
                tally.record(
                    worst <= 1.0,
                    &format!("drift norm {name} T={t}"),
                    format!("max ||Q_t|| / bound = {worst:.4}"),
                );
            }
        }
    }
    for f in [Formulation::F3, Formulation::F4] {
        let problem = minflow(f)?;
        for t in [400, 1600, 6400] {
            let viol = final_violation(&tuned(&problem, t, opts.seed)?);
            let bound = theorem2_bound(&problem.constants, t, 0.0, None)?;
            tally.record(
                viol <= bound,
                &format!("violation {f} T={t}"),
                format!("{viol:.5} <= {bound:.5} with |mu| = 0"),
            );
        }
    }
    Ok(())
}

fn random_matrix(rng: &mut OracleRng, rows: usize, cols: usize) -> Result<Point> {
    Point::matrix(
        rows,
        cols,
        (0..rows * cols)
            .map(|_| rng.random_range(-2.0..2.0))
            .collect(),
    )
}

fn oracles(tally: &mut Tally, opts: &CheckOptions) -> Result<()> {
    let mut rng = OracleRng::seed_from_u64(opts.seed);

    let mut lmo_err = 0.0f64;
    let mut proj_err = 0.0f64;
    let mut losses = 0usize;
    for _ in 0..50 {
        let (rows, cols) = (rng.random_range(1..=6), rng.random_range(1..=6));
        let gamma = rng.random_range(0.5..3.0);
        let ball = NuclearBall::new(gamma, rows, cols)?;
        let z = random_matrix(&mut rng, rows, cols)?;
        let sigma1 = singular_values(&z)?[0];
        lmo_err = lmo_err.max((ball.lmo_exact(&z)?.inner(&z)? + gamma * sigma1).abs());
        let p = ball.project(&z)?;
        proj_err = proj_err
            .max((nuclear_norm(&p)? - gamma).max(0.0))
            .max(ball.project(&p)?.distance(&p)?);
        let best = z.distance(&p)?;
        for _ in 0..200 {
            let c = random_matrix(&mut rng, rows, cols)?;
            let c = c.scale(gamma * rng.random::<f64>() / nuclear_norm(&c)?.max(f64::MIN_POSITIVE));
            if z.distance(&c)? < best - 1e-12 {
                losses += 1;
            }
        }
    }
    tally.record(
        lmo_err <= 1e-9,
        "nuclear LMO",
        format!("max |<s, z> + gamma sigma_1| = {lmo_err:.2e} on 50 matrices"),
    );
    tally.record(
        proj_err <= 1e-9 && losses == 0,
        "nuclear projection",
        format!(
            "feasibility/idempotence error {proj_err:.2e}, {losses} of 10000 candidates closer"
        ),
    );

    let net = default_network();
    let paths = net.enumerate_paths();
    let mut path_err = 0.0f64;
    let mut lp_err = 0.0f64;
    for _ in 0..100 {
        let w = Point::vector(
            (0..net.num_edges())
                .map(|_| rng.random_range(-1.0..1.0))
                .collect(),
        );
        let got = dag_shortest_path_lmo(&net, &w)?.inner(&w)?;
        let best = paths
            .iter()
            .map(|p| net.path_flow(p).inner(&w))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        path_err = path_err.max((got - best).abs());
        let cap = capacitated_flow_lmo(&net, &w)?.inner(&w)?;
        lp_err = lp_err.max((cap - capacitated_lp(&net, &w)?.0).abs());
    }
    tally.record(
        path_err <= 1e-12,
        "path LMO",
        format!(
            "max error {path_err:.2e} against {} enumerated paths, 100 directions",
            paths.len()
        ),
    );
    tally.record(
        lp_err <= 1e-8,
        "capacitated LMO",
        format!("max error {lp_err:.2e} against the LP, 100 directions"),
    );

    let inst = Arc::new(gen_r4nr(&R4nrConfig::desk(), opts.seed)?);
    let mode = NuclearLmoMode::Power {
        iters: opts.power_iters,
    };
    let problem = build_r4nr(inst, mode, SubgradientMode::Full)?;
    let params = configure_parsel2(300, &problem.constants)?;
    let options = RunOptions {
        record: RecordSchedule::Stride(usize::MAX),
        measure_gap: true,
    };
    let report = run(&problem, &params, opts.seed, &options)?;
    let d2 = problem.constants.diameter.powi(2);
    let gaps = &report.stats.measured_gaps;
    let detail = match GapSummary::from_gaps(gaps) {
        Some(s) => {
            let f = s.scaled(d2);
            format!(
                "power({}) on desk R4NR: count {}, mean {:.3e}, max {:.3e} as fractions of D^2; histogram {:?}",
                opts.power_iters,
                f.count,
                f.mean,
                f.max,
                GapSummary::histogram(gaps, d2, 10)
            )
        }
        None => "no gaps measured".into(),
    };
    let min = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    tally.record(min >= -1e-9 && !gaps.is_empty(), "power LMO gaps", detail);
    Ok(())
}
