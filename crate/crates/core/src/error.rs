use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("zero multiplier in set transform")]
    ZeroMultiplier,

    #[error("dilation by {0} is not central; quaternion dilation needs a rational-integer factor")]
    NonCentralDilation(String),

    #[error("{what}: {len} exceeds cap {cap}")]
    CapExceeded { what: &'static str, len: u128, cap: u128 },

    #[error("need at least {needed} terms, got {got}")]
    TooFewTerms { needed: usize, got: usize },

    #[error("index sets out of order at position {0}: max of a block must be below min of the next")]
    OrderingViolation(usize),

    #[error("index {index} outside source bound {bound}")]
    IndexOutOfBound { index: usize, bound: usize },

    #[error("index set must be nonempty and contain only positive integers")]
    InvalidIndexSet,

    #[error("source evaluable up to index {bound}, pigeonhole needs index {needed}")]
    SourceTooShort { needed: usize, bound: usize },

    #[error("only {produced} of {requested} divisible blocks could be formed")]
    InsufficientBlocks { produced: usize, requested: usize },

    #[error("family of sequences is empty")]
    EmptyFamily,

    #[error("term {0} repeats; sequence must be one-to-one")]
    RepeatedTerm(String),

    #[error("value {0} is outside the coloring domain")]
    OutOfDomain(String),

    #[error("too many colors: {0} (at most 4)")]
    TooManyColors(usize),

    #[error("palette must have 2 to 4 colors, got {0}")]
    PaletteSize(usize),

    #[error("no candidate found: deepest level reached {deepest} of {depth}, {backtracks} backtracks")]
    NotFound { deepest: usize, depth: usize, backtracks: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
