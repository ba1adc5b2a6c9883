use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("ring context mismatch: {0}")]
    ContextMismatch(String),

    #[error("degree {degree} exceeds the configured maximum {max}")]
    DegreeBound { degree: u64, max: u32 },

    #[error("perfection level {level} exceeds the configured maximum {max}")]
    LevelBound { level: u32, max: u32 },

    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("operation requires a polynomial ring, but the context has modulus {0}")]
    QuotientRing(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("polynomial {0} is not invariant under the action")]
    NotInvariant(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by a configured bound rather than bad input.
    pub fn is_resource_bound(&self) -> bool {
        matches!(self, Error::DegreeBound { .. } | Error::LevelBound { .. } | Error::ResourceBound(_))
    }
}
