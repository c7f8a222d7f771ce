//! `pffc`: run the solver from JSON configs, check invariants, write fixtures.
//!
//! Exit codes: 0 success, 1 check failure, 2 configuration error, 3 oracle failure.

mod check;
mod config;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::thread;

use clap::{Parser, Subcommand};
use pffc::baselines::pgd_run;
use pffc::problems::{gen_r4nr, DEFAULT_GRAPH};
use pffc::solver::{run, RecordSchedule, RunOptions, RunReport};

use crate::check::{CheckOptions, Suite};
use crate::config::{CliError, Preset, RunConfig, SolverKind};

#[derive(Parser)]
#[command(name = "pffc", version, about = "Projection-free primal-dual solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a solver on the problem described by a JSON config and write a CSV trace.
    Solve {
        config: PathBuf,
        /// Solver seed; falls back to the config, then to PFFC_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short = 'T', long = "horizon")]
        horizon: Option<usize>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        stride: Option<usize>,
        #[arg(long, value_enum)]
        solver: Option<SolverArg>,
    },
    /// Run a property suite and print per-check margins.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        seed: Option<u64>,
        /// Power-iteration budget of the inexact nuclear LMO (oracles suite).
        #[arg(long, default_value_t = 1)]
        power_iters: usize,
    },
    /// Write a problem fixture.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand)]
enum GenCommand {
    /// The shipped Min-Flow network.
    Minflow {
        #[arg(value_parser = ["default"], default_value = "default")]
        which: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// A synthetic reduced-rank regression instance.
    R4nr {
        #[arg(long, value_enum, default_value = "desk")]
        preset: PresetArg,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SolverArg {
    Pffc,
    Pgd,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum PresetArg {
    Desk,
    Large,
}

fn env_seed() -> Result<Option<u64>, CliError> {
    match std::env::var("PFFC_SEED") {
        Ok(v) => {
            v.trim().parse().map(Some).map_err(|_| {
                CliError::Config(format!("PFFC_SEED = {v:?} is not an unsigned integer"))
            })
        }
        Err(_) => Ok(None),
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Config(format!("stdout: {e}"))),
    }
}

fn solve_one(cfg: &RunConfig, seed: u64) -> Result<RunReport, CliError> {
    let problem = cfg.build_problem()?;
    let params = cfg.params(&problem)?;
    let options = RunOptions {
        record: cfg
            .stride
            .map_or(RecordSchedule::Auto, RecordSchedule::Stride),
        measure_gap: cfg.measure_gap,
    };
    let report = match cfg.solver {
        SolverKind::Pffc => run(&problem, &params, seed, &options)?,
        SolverKind::Pgd => pgd_run(
            &problem,
            &cfg.pgd_params(&problem, params.horizon)?,
            seed,
            &options,
        )?,
    };
    let row = report
        .final_row()
        .expect("the final iteration is always recorded");
    let fstar = problem
        .optimum
        .map_or(String::new(), |o| format!(", f* = {:.6}", o.value()));
    eprintln!(
        "seed {seed}: T = {}, f(x_bar) = {:.6}, violation = {:.3e}{fstar}",
        report.horizon,
        row.obj_avg,
        row.violation_l2.unwrap_or(0.0)
    );
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    path: &Path,
    seed: Option<u64>,
    horizon: Option<usize>,
    delta: Option<f64>,
    output: Option<PathBuf>,
    stride: Option<usize>,
    solver: Option<SolverArg>,
) -> Result<(), CliError> {
    let mut cfg = RunConfig::load(path)?;
    cfg.horizon = horizon.or(cfg.horizon);
    cfg.delta = delta.unwrap_or(cfg.delta);
    cfg.output = output.or(cfg.output.take());
    cfg.stride = stride.or(cfg.stride);
    if let Some(s) = solver {
        cfg.solver = match s {
            SolverArg::Pffc => SolverKind::Pffc,
            SolverArg::Pgd => SolverKind::Pgd,
        };
    }
    if cfg.stride == Some(0) {
        return Err(CliError::Config("stride must be at least 1".into()));
    }
    let seeds = match (seed, &cfg.seeds) {
        (Some(s), _) => vec![s],
        (None, Some(list)) if !list.is_empty() => list.clone(),
        (None, Some(_)) => return Err(CliError::Config("seeds is empty".into())),
        (None, None) => vec![cfg.seed.or(env_seed()?).unwrap_or(0)],
    };

    if seeds.len() == 1 {
        let report = solve_one(&cfg, seeds[0])?;
        return write_output(cfg.output.as_deref(), &report.to_csv());
    }
    let template = match &cfg.output {
        Some(p) if p.to_string_lossy().contains("{seed}") => p.to_string_lossy().into_owned(),
        _ => {
            return Err(CliError::Config(
                "several seeds need an output path containing {seed}".into(),
            ))
        }
    };
    // independent runs, one file each
    let results: Vec<Result<(), CliError>> = thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .iter()
            .map(|&seed| {
                let cfg = &cfg;
                let out = PathBuf::from(template.replace("{seed}", &seed.to_string()));
                scope.spawn(move || {
                    let report = solve_one(cfg, seed)?;
                    write_output(Some(&out), &report.to_csv())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("solver thread panicked"))
            .collect()
    });
    results.into_iter().collect()
}

fn cmd_gen(cmd: GenCommand) -> Result<(), CliError> {
    match cmd {
        GenCommand::Minflow { out, .. } => write_output(out.as_deref(), DEFAULT_GRAPH),
        GenCommand::R4nr {
            preset,
            seed,
            gamma,
            out,
        } => {
            let preset = match preset {
                PresetArg::Desk => Preset::Desk,
                PresetArg::Large => Preset::Large,
            };
            let mut gen = preset.config();
            if gamma.is_some() {
                gen.gamma = gamma;
            }
            let seed = seed.or(env_seed()?).unwrap_or(0);
            let inst = gen_r4nr(&gen, seed)?;
            write_output(out.as_deref(), &inst.to_text())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve {
            config,
            seed,
            horizon,
            delta,
            output,
            stride,
            solver,
        } => cmd_solve(&config, seed, horizon, delta, output, stride, solver).map(|_| true),
        Command::Check {
            suite,
            seed,
            power_iters,
        } => env_seed().and_then(|env| {
            let opts = CheckOptions {
                seed: seed.or(env).unwrap_or(0),
                power_iters,
            };
            check::run_suite(suite, &opts).map_err(CliError::from)
        }),
        Command::Gen(cmd) => cmd_gen(cmd).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("pffc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
