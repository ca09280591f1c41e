use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown bound id {0:?}")]
    UnknownBoundId(String),

    #[error("bound {bound_id} needs {needs}, but no generator in the suite provides it")]
    ArityMismatch { bound_id: String, needs: String },

    #[error("{kind} generator (seed {seed}) failed its filter after 100 attempts")]
    ResamplingExhausted { kind: &'static str, seed: u64 },

    #[error("{kind} generator (seed {seed}) produced an object violating {what}")]
    ClassViolation { kind: &'static str, seed: u64, what: String },

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] numrad_core::Error),
}

pub type Result<T> = std::result::Result<T, HarnessError>;
