//! Error type shared by all modules of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Validation and feasibility errors.
///
/// Every constructor and operation validates its inputs up front; numeric
/// infeasibility discovered during a simulation (an undecodable target, say)
/// is reported as data, not as an error.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("k_users must be at least 2, got {0}")]
    InvalidUserCount(usize),

    #[error("alpha must be finite and nonnegative, got {0}")]
    InvalidAlpha(f64),

    #[error("channel bounds must satisfy 0 < delta1 <= delta2 < inf, got [{delta1}, {delta2}]")]
    InvalidBounds { delta1: f64, delta2: f64 },

    #[error("density bound f_max must be positive and finite, got {0}")]
    InvalidDensityBound(f64),

    #[error("grid must be nonempty")]
    EmptyGrid,

    #[error("grid values must be finite, nonnegative and strictly increasing")]
    UnsortedGrid,

    #[error("power exponent log10(P) must be positive and finite, got {0}")]
    InvalidPowerExponent(f64),

    #[error("operation requires the {expected} layer of the {actual} scheme")]
    WrongRegime {
        expected: &'static str,
        actual: crate::gdof::Regime,
    },

    #[error("rate targets must be nonnegative, got {0}")]
    NegativeTarget(f64),

    #[error("subset enumeration is limited to 16 messages, got {0}")]
    TooManyMessages(usize),

    #[error("trial count must be at least 1")]
    InvalidTrials,

    #[error("p_bar must be an integer >= 2, got {0}")]
    InvalidPBar(u64),

    #[error("codeword symbol {value} outside the input alphabet [0, {max}]")]
    OutOfAlphabet { value: i64, max: i64 },

    #[error("codeword length {got} does not match k_users = {expected}")]
    CodewordLength { got: usize, expected: usize },

    #[error("exhaustive enumeration supports 2 or 3 users, got {0}")]
    EnumerationUsers(usize),

    #[error("instance too large to enumerate: {size} codewords exceeds the {limit} limit")]
    InstanceTooLarge { size: u128, limit: u128 },

    #[error("codewords are identical in their interferer coordinates")]
    IdenticalCodewords,

    #[error("codewords must share the same conditioned first coordinate")]
    ConditioningMismatch,

    #[error("gain law has no finite density bound on a degenerate interval")]
    UnboundedDensity,
}
