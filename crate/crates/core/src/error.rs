use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unsupported graph: {0}")]
    UnsupportedGraph(String),

    #[error("insufficient specification: {0}")]
    InsufficientSpecification(String),

    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("numerical failure in {context}: {detail}")]
    Numerical { context: String, detail: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unsupported problem: {0}")]
    UnsupportedProblem(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("degenerate anchor: entry {index} is zero")]
    DegenerateAnchor { index: usize },

    #[error("ill-posed problem: {0}")]
    IllPosed(String),

    #[error("division by zero: {0}")]
    Division(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("quadrature did not converge at x = {node}: error estimate {estimate:e}")]
    Quadrature { node: f64, estimate: f64 },

    #[error("alpha sweep aborted at alpha = {alpha:e}: {source}")]
    Sweep {
        alpha: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("cell {cell}: {source}")]
    Cell {
        cell: String,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn numerical(context: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Numerical {
            context: context.into(),
            detail: detail.into(),
        }
    }

    /// Process exit code: 1 for bad input or configuration, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Parameter(_) | Error::Json(_) | Error::Io(_) => 1,
            Error::Cell { source, .. } | Error::Sweep { source, .. } => source.exit_code(),
            _ => 2,
        }
    }
}
