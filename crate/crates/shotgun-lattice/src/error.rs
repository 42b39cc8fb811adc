use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("region does not fit inside the lattice")]
    OutOfBounds,

    #[error("operands belong to different configurations")]
    ConfigMismatch,

    #[error("label {found} outside the alphabet 1..={q}")]
    BadLabel { found: u16, q: usize },

    #[error("conflicting determination at cell {index}: had {existing}, got {incoming}")]
    Conflict {
        index: usize,
        existing: u16,
        incoming: u16,
    },

    #[error("corner anchor not found ({candidates} candidate patterns)")]
    CornerNotFound { candidates: usize },

    #[error("corner region could not be fully determined")]
    Stalled,

    #[error("instance too large: {0}")]
    InstanceTooLarge(String),

    #[error("swap sets do not satisfy the label preconditions")]
    BadSwapSets,

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
