use crate::space::Shape;

/// Errors raised by the solver library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: Shape, found: Shape },

    #[error("diameter bound must be nonnegative and finite, got {0}")]
    NonPositiveDiameter(f64),

    #[error("LMO budget must be nonnegative, got {0}")]
    NegativeBudget(f64),

    #[error("subgradient bound {name} must be nonnegative, got {value}")]
    NegativeConstant { name: &'static str, value: f64 },

    #[error("inconsistent constraint bound: G = {g} with m = {m} constraints")]
    InconsistentG { g: f64, m: usize },

    #[error("constants declare m = {declared} constraints but {supplied} oracles were supplied")]
    ConstraintCountMismatch { declared: usize, supplied: usize },

    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),

    #[error("degenerate constants: {0}")]
    DegenerateConstants(String),

    #[error("invalid solver parameters: {0}")]
    InvalidParams(String),

    #[error("initial point is not in the feasible set")]
    InfeasibleStart,

    #[error("oracle failure: {0}")]
    OracleFailure(String),

    #[error("exact linear minimum not available for this set")]
    ExactMinUnavailable,

    #[error("singular value decomposition failed")]
    SvdFailure,

    #[error("no path from node {source_node} to node {sink}")]
    NoPathExists { source_node: usize, sink: usize },

    #[error("infeasible flow: max flow {max_flow} is below demand {demand}")]
    Infeasible { max_flow: f64, demand: f64 },

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("bad dimensions: {0}")]
    BadDims(String),

    #[error("formulation has no capacity constraint")]
    WrongFormulation,

    #[error("reference minimizer did not converge: {0}")]
    OracleNotConverged(String),

    #[error("the feasible set exposes no exact projection")]
    ProjectionUnavailable,
}

impl Error {
    /// True for failures raised inside an oracle call (as opposed to bad input).
    pub fn is_oracle_failure(&self) -> bool {
        matches!(
            self,
            Error::OracleFailure(_)
                | Error::SvdFailure
                | Error::NoPathExists { .. }
                | Error::Infeasible { .. }
                | Error::OracleNotConverged(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
