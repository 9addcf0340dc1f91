use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("register width {requested} exceeds the configured maximum of {max} bits")]
    LayoutTooLarge { requested: u32, max: u32 },

    #[error("invalid register layout: {0}")]
    InvalidLayout(String),

    #[error("state layouts differ")]
    LayoutMismatch,

    #[error("layout has no flag qubit")]
    NoFlagQubit,

    /// The sampled branch carries (numerically) no probability mass.
    #[error("sampled measurement branch has mass {0:e}")]
    DegenerateBranch(f64),

    /// The vector being rejected is parallel to the one it is rejected from.
    #[error("rejection residual vanishes")]
    ZeroResidual,

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("type error at position {position}: {message}")]
    Type { position: usize, message: String },

    #[error("predicate has no solutions in range")]
    NoSolutions,

    /// A witness set must be non-empty and a proper subset of the register range.
    #[error("solution set must be non-empty and proper: {0}")]
    DegenerateSet(String),

    #[error("trial count must be at least 1")]
    InvalidTrialCount,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
