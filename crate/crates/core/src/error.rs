use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point sets must have dimension at least 1")]
    ZeroDimension,

    #[error("operation requires a nonempty point set")]
    EmptySet,

    #[error("fibres are only defined for dimension >= 2, got dimension {0}")]
    FiberOfLine(usize),

    #[error("modulus must be positive, got {0}")]
    InvalidModulus(i64),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid box bounds: {0}")]
    InvalidBounds(String),

    #[error("malformed quasicube witness: {0}")]
    MalformedWitness(String),

    #[error("set is not contained in any quasicube")]
    NotInQuasicube,

    #[error("probability {0} is outside the allowed range")]
    InvalidProbability(f64),

    #[error("weight {value} at {at} is not a finite nonnegative number")]
    InvalidWeight { at: i64, value: f64 },

    #[error("grid of {0} points per cell is too coarse (need at least 2)")]
    GridTooCoarse(usize),

    #[error("search space estimate {estimate} exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },

    #[error("scan limits exceeded: {0}")]
    ScanLimits(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}
