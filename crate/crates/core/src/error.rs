use thiserror::Error;

/// Errors raised by every layer of the crate.
///
/// The variants map onto CLI exit codes: argument, lookup and capability
/// problems are usage errors, hypothesis violations are assertion failures,
/// and precision exhaustion is an internal failure.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Recoverable signal from `guarded_round`: the certified interval
    /// straddles a rounding boundary and must be re-evaluated.
    #[error("precision insufficient to decide the rounding")]
    PrecisionInsufficient,

    #[error("precision exhausted at {bits} bits while rounding coefficient k = {k}")]
    PrecisionExhausted { k: usize, bits: u32 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("{module}: {message}")]
    Capability {
        module: &'static str,
        message: String,
    },

    #[error("unknown function: {0}")]
    Lookup(String),

    #[error("insufficient data: need at least {needed} positive samples, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("config: {field}: {message}")]
    Config { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization: {0}")]
    Serialization(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn capability(module: &'static str, msg: impl Into<String>) -> Self {
        Error::Capability {
            module,
            message: msg.into(),
        }
    }
}
