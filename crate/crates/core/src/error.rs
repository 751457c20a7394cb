use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("shape has {0} amplitudes, more than the supported 2^24")]
    TooLarge(u128),

    #[error("expected {expected} amplitudes, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("all amplitudes are zero")]
    ZeroState,

    #[error("state is not normalized (norm = {norm}); pass --normalize to rescale")]
    NotNormalized { norm: f64 },

    #[error("bad arity: {0}")]
    BadArity(String),

    #[error("product factor {index} is not a unit vector (norm = {norm})")]
    UnnormalizedFactor { index: usize, norm: f64 },

    #[error("bad partition: {0}")]
    BadPartition(String),

    #[error("partition side is empty")]
    EmptyPartition,

    #[error("subsystem {index} out of range 1..={arity}")]
    SubsystemOutOfRange { index: usize, arity: usize },

    #[error("mode {mode} is degenerate: a side of its unfolding has dimension 1")]
    DegenerateMode { mode: usize },

    #[error("operation needs {expected} subsystems, state has {got}")]
    WrongArity { expected: usize, got: usize },

    #[error("operation needs shape {expected:?}, state has {got:?}")]
    WrongShape { expected: Vec<usize>, got: Vec<usize> },

    #[error("{0} subsystems exceeds the bipartition enumeration limit of 11")]
    TooManySubsystems(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed state file: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
