//! Run configuration: one JSON document per run.
//!
//! ```json
//! {
//!   "problem": { "minflow": { "formulation": "F3" } },
//!   "solver": "pffc",
//!   "schedule": "parsel2",
//!   "T": 2000,
//!   "seed": 1,
//!   "stride": 10,
//!   "output": "f3.csv"
//! }
//! ```

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use pffc::baselines::{PgdParams, StepRule};
use pffc::problems::{
    build_minflow, build_oned, build_r4nr, default_network, gen_r4nr, CoefficientRule, Formulation,
    OneDimObjective, OneDimSpec, R4nrConfig, R4nrInstance, SubgradientMode,
};
use pffc::sets::{DagNetwork, NuclearLmoMode};
use pffc::solver::{configure_parsel1, configure_parsel2};
use pffc::{ProblemInstance, SolverParams};
use serde::Deserialize;

/// Failure of a CLI command, classified by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad configuration or unreadable input; exit code 2.
    Config(String),
    /// An oracle failed during the run; exit code 3.
    Oracle(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Oracle(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Oracle(msg) => write!(f, "oracle failure: {msg}"),
        }
    }
}

impl From<pffc::Error> for CliError {
    fn from(e: pffc::Error) -> Self {
        if e.is_oracle_failure() {
            CliError::Oracle(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub problem: ProblemConfig,
    #[serde(default)]
    pub solver: SolverKind,
    pub schedule: Schedule,
    /// Horizon; implied by `parsel1`, required otherwise.
    #[serde(rename = "T", default)]
    pub horizon: Option<usize>,
    #[serde(default)]
    pub delta: f64,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Several seeds run in parallel; `output` must then contain `{seed}`.
    #[serde(default)]
    pub seeds: Option<Vec<u64>>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub stride: Option<usize>,
    #[serde(default)]
    pub lmo: LmoConfig,
    #[serde(default)]
    pub measure_gap: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemConfig {
    Minflow(MinflowConfig),
    R4nr(R4nrSource),
    #[serde(rename = "custom-1d")]
    Custom1d(OneDimConfig),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinflowConfig {
    pub formulation: String,
    /// Graph file; the shipped instance when absent.
    #[serde(default)]
    pub graph: Option<PathBuf>,
    #[serde(default)]
    pub coefficients: Option<Coefficients>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coefficients {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct R4nrSource {
    /// Instance file written by `pffc gen r4nr`.
    #[serde(default)]
    pub file: Option<PathBuf>,
    #[serde(default)]
    pub preset: Option<Preset>,
    /// Generator seed, separate from the solver seed.
    #[serde(default)]
    pub instance_seed: u64,
    #[serde(default)]
    pub gamma: Option<f64>,
    #[serde(default)]
    pub subgradient: Subgradient,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    #[default]
    Desk,
    Large,
}

impl Preset {
    pub fn config(self) -> R4nrConfig {
        match self {
            Preset::Desk => R4nrConfig::desk(),
            Preset::Large => R4nrConfig::large(),
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize, Default)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Subgradient {
    #[default]
    Full,
    Stochastic {
        batch: usize,
    },
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OneDimConfig {
    pub lo: f64,
    pub hi: f64,
    pub start: f64,
    pub objective: OneDimObjectiveConfig,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum OneDimObjectiveConfig {
    Linear { slope: f64 },
    Expmax,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    #[default]
    Pffc,
    Pgd,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Schedule {
    Parsel1 { epsilon: f64 },
    Parsel2,
    Explicit { eta: f64, alpha: f64, beta: f64 },
}

#[derive(Debug, Clone, Copy, Deserialize, Default)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum LmoConfig {
    #[default]
    Exact,
    Power {
        iters: usize,
    },
}

impl LmoConfig {
    fn mode(self) -> NuclearLmoMode {
        match self {
            LmoConfig::Exact => NuclearLmoMode::Exact,
            LmoConfig::Power { iters } => NuclearLmoMode::Power { iters },
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = read(path)?;
        RunConfig::parse(&text)
    }

    /// Solver parameters for the chosen schedule.
    pub fn params(&self, problem: &ProblemInstance) -> Result<SolverParams, CliError> {
        let params = match self.schedule {
            Schedule::Parsel1 { epsilon } => {
                let mut p = configure_parsel1(epsilon)?;
                if let Some(t) = self.horizon {
                    if t != p.horizon {
                        return Err(CliError::Config(format!(
                            "T = {t} conflicts with T = {} implied by epsilon = {epsilon}",
                            p.horizon
                        )));
                    }
                }
                p.delta = self.delta;
                p
            }
            Schedule::Parsel2 => {
                let mut c = problem.constants;
                c.delta = self.delta;
                configure_parsel2(self.require_horizon()?, &c)?
            }
            Schedule::Explicit { eta, alpha, beta } => {
                SolverParams::new(self.require_horizon()?, eta, alpha, beta, self.delta)?
            }
        };
        Ok(params)
    }

    /// Baseline parameters: the same horizon with the default constant step.
    pub fn pgd_params(
        &self,
        problem: &ProblemInstance,
        horizon: usize,
    ) -> Result<PgdParams, CliError> {
        Ok(PgdParams {
            rule: StepRule::Constant,
            check_feasibility: true,
            ..PgdParams::default_for(problem, horizon)?
        })
    }

    fn require_horizon(&self) -> Result<usize, CliError> {
        match self.horizon {
            Some(t) if t > 0 => Ok(t),
            Some(_) => Err(CliError::Config("T must be at least 1".into())),
            None => Err(CliError::Config(
                "T is required unless the schedule is parsel1".into(),
            )),
        }
    }

    pub fn build_problem(&self) -> Result<ProblemInstance, CliError> {
        let mut problem = match &self.problem {
            ProblemConfig::Minflow(cfg) => {
                let formulation: Formulation = cfg.formulation.parse()?;
                let net = match &cfg.graph {
                    Some(path) => DagNetwork::parse(&read(path)?)?,
                    None => default_network(),
                };
                let rule = match &cfg.coefficients {
                    Some(k) => CoefficientRule::Explicit {
                        a: k.a.clone(),
                        b: k.b.clone(),
                        c: k.c.clone(),
                    },
                    None => CoefficientRule::Default,
                };
                build_minflow(net, rule, formulation)?.1
            }
            ProblemConfig::R4nr(cfg) => {
                let inst = r4nr_instance(cfg)?;
                let mode = match cfg.subgradient {
                    Subgradient::Full => SubgradientMode::Full,
                    Subgradient::Stochastic { batch } => SubgradientMode::Stochastic { batch },
                };
                build_r4nr(Arc::new(inst), self.lmo.mode(), mode)?
            }
            ProblemConfig::Custom1d(cfg) => build_oned(OneDimSpec {
                lo: cfg.lo,
                hi: cfg.hi,
                start: cfg.start,
                objective: match cfg.objective {
                    OneDimObjectiveConfig::Linear { slope } => OneDimObjective::Linear { slope },
                    OneDimObjectiveConfig::Expmax => OneDimObjective::ExpMax,
                },
            })?,
        };
        problem.constants.delta = self.delta;
        Ok(problem)
    }
}

fn r4nr_instance(cfg: &R4nrSource) -> Result<R4nrInstance, CliError> {
    match (&cfg.file, cfg.preset) {
        (Some(_), Some(_)) => Err(CliError::Config(
            "r4nr: give either file or preset, not both".into(),
        )),
        (Some(path), None) => {
            if cfg.gamma.is_some() {
                return Err(CliError::Config(
                    "r4nr: gamma comes from the instance file".into(),
                ));
            }
            Ok(R4nrInstance::parse(&read(path)?)?)
        }
        (None, preset) => {
            let mut gen = preset.unwrap_or_default().config();
            if cfg.gamma.is_some() {
                gen.gamma = cfg.gamma;
            }
            Ok(gen_r4nr(&gen, cfg.instance_seed)?)
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_uses_defaults() {
        let cfg = RunConfig::parse(
            r#"{"problem": {"minflow": {"formulation": "f3"}}, "schedule": "parsel2", "T": 10}"#,
        )
        .unwrap();
        assert_eq!(cfg.solver, SolverKind::Pffc);
        assert_eq!(cfg.delta, 0.0);
        let problem = cfg.build_problem().unwrap();
        assert_eq!(cfg.params(&problem).unwrap().horizon, 10);
    }

    #[test]
    fn two_schedules_are_rejected() {
        let text = r#"{"problem": {"custom-1d": {"lo": 0, "hi": 1, "start": 1, "objective": {"linear": {"slope": 1}}}},
            "schedule": {"parsel1": {"epsilon": 0.1}, "parsel2": null}, "T": 10}"#;
        assert!(RunConfig::parse(text).is_err());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"problem": {"minflow": {"formulation": "F1"}}, "schedule": "parsel2", "T": 10, "horizon": 5}"#;
        assert!(RunConfig::parse(text).is_err());
    }

    #[test]
    fn parsel1_horizon_must_agree() {
        let base = r#"{"problem": {"custom-1d": {"lo": 0, "hi": 1, "start": 1, "objective": "expmax"}},
            "schedule": {"parsel1": {"epsilon": 0.1}}"#;
        let ok = RunConfig::parse(&format!("{base}, \"T\": 100}}")).unwrap();
        let problem = ok.build_problem().unwrap();
        assert_eq!(ok.params(&problem).unwrap().horizon, 100);
        let bad = RunConfig::parse(&format!("{base}, \"T\": 50}}")).unwrap();
        assert!(bad.params(&problem).is_err());
    }

    #[test]
    fn missing_graph_file_is_a_config_error() {
        let cfg = RunConfig::parse(
            r#"{"problem": {"minflow": {"formulation": "F1", "graph": "/nonexistent/g.graph"}}, "schedule": "parsel2", "T": 5}"#,
        )
        .unwrap();
        assert!(cfg
            .build_problem()
            .unwrap_err()
            .to_string()
            .contains("/nonexistent/g.graph"));
    }
}
