use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invariant breach at step {step} (t = {time}): {metric} = {value:e} exceeds {limit:e}")]
    InvariantBreach {
        step: usize,
        time: f64,
        metric: &'static str,
        value: f64,
        limit: f64,
    },

    #[error("non-finite state at step {step} (t = {time})")]
    NonFinite { step: usize, time: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit status: 1 for configuration problems, 2 for runtime breaches.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvariantBreach { .. } | Error::NonFinite { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
