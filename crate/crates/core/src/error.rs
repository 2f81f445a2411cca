use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("base must be at least 3, got {0}")]
    InvalidBase(u32),

    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: u32, base: u32 },

    #[error("digit sequence must be nonempty")]
    EmptyDigits,

    #[error("multiplier {k} outside [2, {max}] for base {g}", max = g - 1)]
    InvalidMultiplier { g: u32, k: u32 },

    #[error("digit vector is not canonical (leading zero)")]
    NotCanonical,

    #[error("digit vector is zero where a nonzero value is required")]
    ZeroValue,

    #[error("search budget exceeded: {required} candidates, budget {budget}")]
    BudgetExceeded { required: u64, budget: u64 },

    #[error("path budget exceeded at length {digits}: more than {budget} paths")]
    PathBudgetExceeded { digits: usize, budget: usize },

    #[error("duplicate multiple emitted: {0} (path decoding is expected to be bijective)")]
    DuplicateMultiple(String),

    #[error("value does not fit in 64 bits; decimal rendering unavailable")]
    ValueTooLarge,

    #[error("cannot parse {input:?} as a number: {reason}")]
    Parse { input: String, reason: String },

    #[error("polynomial division is not exact")]
    NonDivisible,

    #[error("denominator constant term must be a unit, got {0}")]
    DenominatorNotUnit(String),

    #[error("zero denominator in rational function")]
    ZeroDenominator,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
