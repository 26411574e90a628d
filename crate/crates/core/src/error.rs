use std::path::PathBuf;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("degenerate graph: {0}")]
    DegenerateGraph(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("target density {target} is infeasible: it needs beta = {beta:.4} > 1")]
    InfeasibleDensity { target: f64, beta: f64 },

    #[error("membrane potential of neuron {neuron} diverged at step {step}")]
    NumericalDivergence { neuron: usize, step: usize },

    #[error("sensor {sensor} coincides with neuron {neuron}")]
    Singularity { sensor: usize, neuron: usize },

    #[error("signal {index} has zero variance and cannot be z-scored")]
    ConstantSignal { index: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("malformed {what} at line {line}: {msg}")]
    Parse {
        what: &'static str,
        line: usize,
        msg: String,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
